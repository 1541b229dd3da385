use std::collections::BTreeMap;

use frechet_core::{continuous_frechet, graph_frechet, GraphMap, MultiGraph, Point, Polyline, Shape, DEFAULT_ISO_CAP};

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{curve, path_shapes, trial_rng, vertex_count, witness};
use crate::suites::Suite;

pub struct Metric;

/// Triangle graph through the first three vertices of `c`.
fn triangle(c: &Polyline) -> Result<GraphMap, HarnessError> {
    let g = MultiGraph::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).map_err(|e| HarnessError::Fixture(e.to_string()))?;
    let vs = c.vertices();
    let pts: BTreeMap<String, Point> = ["a", "b", "c"].iter().zip(vs).map(|(n, v)| (n.to_string(), v.clone())).collect();
    GraphMap::straight(g, pts).map_err(|e| HarnessError::Fixture(e.to_string()))
}

impl Suite for Metric {
    fn name(&self) -> &'static str {
        "metric"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let tol = &cfg.tol;
        let eps = tol.eps_dist;
        let mut identity = Check::at_most("identity", eps);
        let mut symmetry = Check::at_most("symmetry", 2.0 * eps);
        let mut triangle_ok = Check::at_least("triangle", -3.0 * eps);
        let mut infinite = Check::at_most("non_homeomorphic_infinite", 0.0);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 1, trial);
            let mut draw = || {
                let n = vertex_count(&mut rng, cfg);
                curve(&mut rng, cfg.dim, n, cfg.scale)
            };
            let (p, q, r) = (draw(), draw(), draw());
            let w = || witness(self.name(), cfg, trial, &path_shapes(&[&p, &q, &r]));
            let d = |a: &Polyline, b: &Polyline| continuous_frechet(a, b, tol);
            identity.observe(d(&p, &p)?.hi, w);
            let (pq, qp) = (d(&p, &q)?, d(&q, &p)?);
            symmetry.observe((pq.value() - qp.value()).abs(), w);
            let (qr, pr) = (d(&q, &r)?, d(&p, &r)?);
            triangle_ok.observe(pq.value() + qr.value() - pr.value(), w);
            if r.len() >= 3 {
                let tri = triangle(&r)?;
                let gd = graph_frechet(&GraphMap::interval(&p), &tri, tol, DEFAULT_ISO_CAP)?;
                let shapes = [Shape::Path(p.clone()), Shape::Graph(tri)];
                infinite.observe_bool(gd.enclosure.lo == f64::INFINITY, || witness(self.name(), cfg, trial, &shapes));
            }
        }
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![identity.finish(), symmetry.finish(), triangle_ok.finish(), infinite.finish()];
        Ok(report)
    }
}
