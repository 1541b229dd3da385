use std::collections::BTreeMap;

use frechet_core::{continuous_frechet, graph_frechet, GraphMap, MultiGraph, Point, Shape, DEFAULT_ISO_CAP};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{homeomorphism, path_shapes, sup_gap, trial_rng, vertex_count, witness, zigzag};
use crate::suites::Suite;

pub struct Nonseparability;

const BREAKPOINTS: usize = 5;
const MIN_GAP: f64 = 0.1;
const MAX_ATTEMPTS: usize = 200;

/// Cycle on `n` vertices placed on a circle; `shift` relabels vertex `i` to
/// the position of vertex `i + shift`.
fn cycle(n: usize, shift: usize, dim: usize) -> Result<GraphMap, HarnessError> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = (0..n).map(|i| (refs[i], refs[(i + 1) % n])).collect();
    let g = MultiGraph::from_pairs(&refs, &pairs).map_err(|e| HarnessError::Fixture(e.to_string()))?;
    let pts: BTreeMap<String, Point> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * ((i + shift) % n) as f64 / n as f64;
            let mut c = vec![a.cos(), a.sin()];
            c.resize(dim.max(2), 0.0);
            (names[i].clone(), Point::new(c).expect("finite"))
        })
        .collect();
    GraphMap::straight(g, pts).map_err(|e| HarnessError::Fixture(e.to_string()))
}

impl Suite for Nonseparability {
    fn name(&self) -> &'static str {
        "nonseparability"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let tol = &cfg.tol;
        let mut gap = Check::at_least("sup_gap", MIN_GAP);
        let mut distance = Check::at_most("reparameterized_distance", tol.eps_dist);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 2, trial);
            let n = vertex_count(&mut rng, cfg);
            let p = zigzag(&mut rng, cfg.dim, n, cfg.scale);
            let need = MIN_GAP * p.diameter();
            // redraw h until it moves points far enough; keep the best draw otherwise
            let mut best = None;
            for _ in 0..MAX_ATTEMPTS {
                let h = homeomorphism(&mut rng, BREAKPOINTS);
                let q = p.compose(&h)?;
                let g = sup_gap(&p, &q);
                if best.as_ref().is_none_or(|(bg, _, _)| g > *bg) {
                    best = Some((g, h, q));
                }
                if g >= need {
                    break;
                }
            }
            let (g, h, q) = best.expect("at least one attempt");
            let w = || {
                let mut v = witness(self.name(), cfg, trial, &path_shapes(&[&p, &q]));
                v["h"] = serde_json::json!(h);
                v
            };
            gap.observe(g / p.diameter(), w);
            distance.observe(continuous_frechet(&p, &q, tol)?.hi, w);
        }
        // a cycle against the same cycle turned half way round
        let mut circle = Check::at_most("circle_half_turn", tol.eps_dist);
        let mut rng = trial_rng(cfg.seed, 2, cfg.trials);
        let n = 2 * rng.gen_range(3..8);
        let (a, b) = (cycle(n, 0, cfg.dim)?, cycle(n, n / 2, cfg.dim)?);
        let d = graph_frechet(&a, &b, tol, DEFAULT_ISO_CAP)?;
        circle.observe(d.enclosure.hi, || witness(self.name(), cfg, cfg.trials, &[Shape::Graph(a.clone()), Shape::Graph(b.clone())]));
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![gap.finish(), distance.finish(), circle.finish()];
        Ok(report)
    }
}
