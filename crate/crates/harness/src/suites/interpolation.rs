use frechet_core::{frechet_at_most, Polyline, Shape};
use frechet_morph::{linear_morph, MorphContext};

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{curve, path_shapes, trial_rng, vertex_count, witness};
use crate::suites::Suite;

pub struct Interpolation;

pub const FRAMES: usize = 64;
const SLACK: f64 = 2e-6;

fn path(s: &Shape) -> &Polyline {
    match s {
        Shape::Path(p) => p,
        Shape::Graph(_) => unreachable!("linear morphs of paths produce paths"),
    }
}

impl Suite for Interpolation {
    fn name(&self) -> &'static str {
        "interpolation"
    }

    fn defaults(&self) -> SuiteConfig {
        SuiteConfig { trials: 50, ..SuiteConfig::default() }.with_vertices(4, 12)
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let ctx = MorphContext { tol: cfg.tol, ..MorphContext::with_frames(FRAMES) };
        let mut contraction = Check::at_most("contraction", 0.0);
        let mut modulus = Check::at_most("modulus", 0.0);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 4, trial);
            let n = vertex_count(&mut rng, cfg);
            let p = curve(&mut rng, cfg.dim, n, cfg.scale);
            let n = vertex_count(&mut rng, cfg);
            let q = curve(&mut rng, cfg.dim, n, cfg.scale);
            let w = || witness(self.name(), cfg, trial, &path_shapes(&[&p, &q]));
            let seq = linear_morph(&p, &q, &ctx)?;
            // the reparameterized target is the final frame
            let target = path(&seq.frames.last().expect("frames").shape);
            let mut ok = true;
            for f in &seq.frames {
                ok &= frechet_at_most(path(&f.shape), target, (1.0 - f.t) * (seq.d0 + SLACK))?;
            }
            contraction.observe_bool(ok, w);
            let mut ok = true;
            for (i, a) in seq.frames.iter().enumerate() {
                for b in &seq.frames[i + 1..] {
                    ok &= frechet_at_most(path(&a.shape), path(&b.shape), (b.t - a.t) * seq.d0 + SLACK)?;
                }
            }
            modulus.observe_bool(ok, w);
        }
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![contraction.finish(), modulus.finish()];
        Ok(report)
    }
}
