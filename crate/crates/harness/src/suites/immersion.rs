use frechet_core::{ClassLabel, Point, Polyline, Shape, DEFAULT_ISO_CAP};
use frechet_morph::{immersion_morph, verify_morph, Maneuver, MorphContext};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{curve, path_shapes, point, rigid_2d, trial_rng, vertex_count, witness};
use crate::suites::{class_of, Suite};

pub struct Immersion;

/// Trials `0..5` are collinear reversals and `5..10` forced backtracks.
pub const ADVERSARIAL: usize = 5;

/// Segment against its own reversal: the straight-line family collapses to a point.
pub fn collinear_reversed(rng: &mut impl Rng, scale: f64) -> (Polyline, Polyline) {
    loop {
        let (a, b) = (point(rng, 2, scale), point(rng, 2, scale));
        if a.distance(&b) > 0.2 * scale {
            let p = Polyline::new(vec![a, b]).expect("distinct endpoints");
            let q = p.reverse();
            return (p, q);
        }
    }
}

/// Hook whose last vertex swings through the line of the first segment,
/// forcing a backtrack halfway.
pub fn forced_backtrack(rng: &mut impl Rng, scale: f64) -> (Polyline, Polyline) {
    let c = rng.gen_range(0.2..0.8);
    let h = rng.gen_range(0.2..0.6);
    let hook = |y: f64| Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[c, y]]).expect("hook");
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let shift = (rng.gen_range(0.0..scale), rng.gen_range(0.0..scale));
    let s = rng.gen_range(0.5..1.0) * scale;
    let place = |p: Polyline| rigid_2d(&p.map_points(|v| v.scale(s)), angle, shift);
    (place(hook(h)), place(hook(-h)))
}

impl Suite for Immersion {
    fn name(&self) -> &'static str {
        "immersion"
    }

    fn defaults(&self) -> SuiteConfig {
        SuiteConfig { trials: 25, ..SuiteConfig::default() }.with_vertices(3, 10)
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let tol = &cfg.tol;
        let ctx = MorphContext { tol: *tol, ..MorphContext::default() };
        let mut immersed = Check::at_most("frames_immersed", 0.0);
        let mut verified = Check::at_most("morph_verified", 0.0);
        let mut maneuvers = Check::at_least("adversarial_maneuvers", 1.0);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 5, trial);
            let (p, q) = if trial < ADVERSARIAL {
                collinear_reversed(&mut rng, cfg.scale)
            } else if trial < 2 * ADVERSARIAL {
                forced_backtrack(&mut rng, cfg.scale)
            } else {
                let mut draw = || loop {
                    let n = vertex_count(&mut rng, cfg);
                    let c = curve(&mut rng, 2, n, cfg.scale);
                    if class_of(&Shape::Path(c.clone()), tol).satisfies(ClassLabel::I) {
                        return c;
                    }
                };
                (draw(), draw())
            };
            let w = || witness(self.name(), cfg, trial, &path_shapes(&[&p, &q]));
            let seq = immersion_morph(&p, &q, &ctx)?;
            let bad = seq.frames.iter().filter(|f| !class_of(&f.shape, tol).satisfies(ClassLabel::I)).count();
            immersed.observe(bad as f64 + if seq.is_obstructed() { 1.0 } else { 0.0 }, w);
            let report = verify_morph(&seq, None, tol, DEFAULT_ISO_CAP)?;
            verified.observe_bool(report.passed, w);
            if trial < 2 * ADVERSARIAL {
                let n = seq.events.iter().filter(|e| e.maneuver_applied != Maneuver::None).count();
                maneuvers.observe(n as f64, w);
            }
        }
        // on the line a reversal cannot be undone through immersions
        let mut line = Check::at_most("line_reversal_obstructed", 0.0);
        let p = Polyline::new(vec![Point::new(vec![0.0]).expect("finite"), Point::new(vec![cfg.scale]).expect("finite")])?;
        let q = p.reverse();
        let seq = immersion_morph(&p, &q, &ctx)?;
        line.observe_bool(seq.is_obstructed(), || witness(self.name(), cfg, cfg.trials, &path_shapes(&[&p, &q])));
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![immersed.finish(), verified.finish(), maneuvers.finish(), line.finish()];
        Ok(report)
    }
}
