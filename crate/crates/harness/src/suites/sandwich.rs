use frechet_core::{continuous_frechet, discrete_frechet, hausdorff_distance};

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{curve, path_shapes, trial_rng, vertex_count, witness};
use crate::suites::Suite;

pub struct Sandwich;

impl Suite for Sandwich {
    fn name(&self) -> &'static str {
        "sandwich"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let tol = &cfg.tol;
        let eps = tol.eps_dist;
        let mut above_hausdorff = Check::at_most("hausdorff_below_continuous", eps);
        let mut below_discrete = Check::at_most("continuous_below_discrete", eps);
        let mut discrete_gap = Check::at_most("discrete_gap_within_segment", eps);
        let mut width = Check::at_most("enclosure_width", eps);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 3, trial);
            let n = vertex_count(&mut rng, cfg);
            let p = curve(&mut rng, cfg.dim, n, cfg.scale);
            let n = vertex_count(&mut rng, cfg);
            let q = curve(&mut rng, cfg.dim, n, cfg.scale);
            let w = || witness(self.name(), cfg, trial, &path_shapes(&[&p, &q]));
            let c = continuous_frechet(&p, &q, tol)?;
            let d = discrete_frechet(&p, &q)?;
            let h = hausdorff_distance(&p, &q, tol)?;
            // the sampled Hausdorff value never exceeds the true one
            above_hausdorff.observe(h.value - c.hi, w);
            below_discrete.observe(c.lo - d, w);
            let seg = p.max_segment_length().max(q.max_segment_length());
            discrete_gap.observe(d - c.lo - seg, w);
            width.observe(c.width(), w);
        }
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![above_hausdorff.finish(), below_discrete.finish(), discrete_gap.finish(), width.finish()];
        Ok(report)
    }
}
