use std::collections::BTreeMap;

use frechet_core::{graph_frechet, path_frechet, GraphMap, MultiGraph, Point, Shape, DEFAULT_ISO_CAP};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::{Check, SuiteReport};
use crate::sample::{curve, path_shapes, point, trial_rng, vertex_count, witness};
use crate::suites::Suite;

pub struct Graph;

const INTERVAL_GAP: f64 = 2e-6;

fn straight(names: &[&str], pairs: &[(&str, &str)], pts: Vec<Point>) -> Result<GraphMap, HarnessError> {
    let g = MultiGraph::from_pairs(names, pairs).map_err(|e| HarnessError::Fixture(e.to_string()))?;
    let vp: BTreeMap<String, Point> = names.iter().map(|n| n.to_string()).zip(pts).collect();
    GraphMap::straight(g, vp).map_err(|e| HarnessError::Fixture(e.to_string()))
}

/// Two branch vertices joined by three paths through `m1..m3`.
pub fn theta(pts: Vec<Point>) -> Result<GraphMap, HarnessError> {
    straight(&["a", "b", "m1", "m2", "m3"], &[("a", "m1"), ("m1", "b"), ("a", "m2"), ("m2", "b"), ("a", "m3"), ("m3", "b")], pts)
}

pub fn triangle(pts: Vec<Point>) -> Result<GraphMap, HarnessError> {
    straight(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")], pts)
}

/// Star with three arms.
pub fn tripod(pts: Vec<Point>) -> Result<GraphMap, HarnessError> {
    straight(&["o", "x", "y", "z"], &[("o", "x"), ("o", "y"), ("o", "z")], pts)
}

impl Suite for Graph {
    fn name(&self) -> &'static str {
        "graph"
    }

    fn defaults(&self) -> SuiteConfig {
        SuiteConfig { trials: 50, ..SuiteConfig::default() }.with_vertices(3, 15)
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let tol = &cfg.tol;
        let mut interval = Check::at_most("interval_matches_unoriented", INTERVAL_GAP);
        let mut infinite = Check::at_most("non_homeomorphic_infinite", 0.0);
        let mut translate = Check::at_most("theta_translate", tol.eps_dist);
        for trial in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, 8, trial);
            let n = vertex_count(&mut rng, cfg);
            let p = curve(&mut rng, cfg.dim, n, cfg.scale);
            let n = vertex_count(&mut rng, cfg);
            let q = curve(&mut rng, cfg.dim, n, cfg.scale);
            let gd = graph_frechet(&GraphMap::interval(&p), &GraphMap::interval(&q), tol, DEFAULT_ISO_CAP)?;
            let pd = path_frechet(&p, &q, false, tol)?;
            interval.observe((gd.value() - pd.value()).abs(), || witness(self.name(), cfg, trial, &path_shapes(&[&p, &q])));

            let mut pts = |k: usize| (0..k).map(|_| point(&mut rng, cfg.dim, cfg.scale)).collect::<Vec<_>>();
            let th = theta(pts(5))?;
            let others = [Shape::Path(p.clone()), Shape::Graph(triangle(pts(3))?), Shape::Graph(tripod(pts(4))?)];
            for o in &others {
                let d = graph_frechet(&th, &o.as_graph(), tol, DEFAULT_ISO_CAP)?;
                infinite.observe_bool(d.enclosure.lo == f64::INFINITY, || witness(self.name(), cfg, trial, &[Shape::Graph(th.clone()), o.clone()]));
            }

            let v: Vec<f64> = (0..cfg.dim).map(|_| rng.gen_range(-0.5..0.5) * cfg.scale).collect();
            let shift = Point::new(v).expect("finite");
            let moved = th.map_points(|x| x.add(&shift));
            let d = graph_frechet(&th, &moved, tol, DEFAULT_ISO_CAP)?;
            translate.observe((d.value() - shift.norm()).abs(), || witness(self.name(), cfg, trial, &[Shape::Graph(th.clone()), Shape::Graph(moved.clone())]));
        }
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = vec![interval.finish(), infinite.finish(), translate.finish()];
        Ok(report)
    }
}
