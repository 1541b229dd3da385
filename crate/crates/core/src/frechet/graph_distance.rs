//! Fréchet distance between graph-maps of homeomorphic graphs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{continuous_frechet, Enclosure};
use crate::error::{FrechetError, GeometryError};
use crate::graph::{enumerate_isomorphisms, smooth, GraphMap, Isomorphism, SmoothedGraph};
use crate::point::Point;
use crate::polyline::{Polyline, Tolerances};

/// Number of start positions tried on each circle component.
const CIRCLE_SHIFTS: usize = 96;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDistance {
    pub enclosure: Enclosure,
    /// The minimizing homeomorphism skeleton; `None` when no homeomorphism exists.
    pub isomorphism: Option<Isomorphism>,
    /// Extra slack from discretized circle rotations, already folded into `enclosure.lo`.
    pub circle_error: f64,
}

impl GraphDistance {
    pub fn value(&self) -> f64 {
        self.enclosure.value()
    }
}

fn rotate_closed(c: &Polyline, k: usize) -> Polyline {
    let vs = c.vertices();
    let n = vs.len() - 1; // last equals first
    let mut pts: Vec<Point> = (0..=n).map(|i| vs[(k + i) % n].clone()).collect();
    pts[n] = vs[k % n].clone();
    Polyline::new(pts).expect("rotation of a valid closed curve")
}

/// Rotation and orientation of the closed curve `b` that best matches `a`.
///
/// Returns the realigned (refined) copy of `b`, its distance enclosure to `a`
/// and the spacing error of the start positions tried.
pub fn align_circle(a: &Polyline, b: &Polyline, tol: &Tolerances) -> Result<(Polyline, Enclosure, f64), GeometryError> {
    if b.len() < 3 {
        return Ok((b.clone(), continuous_frechet(a, b, tol)?, 0.0));
    }
    let spacing = (b.length() / CIRCLE_SHIFTS as f64).max(tol.eps_dist);
    let rb = b.refined(spacing);
    let err = rb.max_segment_length();
    let mut best: Option<(Polyline, Enclosure)> = None;
    let mut lo = f64::INFINITY;
    let n = rb.len() - 1;
    for dir in [rb.clone(), rb.reverse()] {
        for k in 0..n {
            let cand = rotate_closed(&dir, k);
            let e = continuous_frechet(a, &cand, tol)?;
            lo = lo.min(e.lo);
            if best.as_ref().is_none_or(|(_, b)| e.hi < b.hi) {
                best = Some((cand, e));
            }
        }
    }
    let (c, mut e) = best.expect("at least one rotation");
    e.lo = (lo - err).max(0.0);
    Ok((c, e, err))
}

/// Distance between closed curves with free choice of starting point on `b`.
fn circle_distance(a: &Polyline, b: &Polyline, tol: &Tolerances) -> Result<(Enclosure, f64), GeometryError> {
    let (_, e, err) = align_circle(a, b, tol)?;
    Ok((e, err))
}

/// Graph Fréchet distance: the best homeomorphism, measured by its worst edge.
///
/// Returns `+∞` when the underlying graphs are not homeomorphic.
pub fn graph_frechet(a: &GraphMap, b: &GraphMap, tol: &Tolerances, iso_cap: usize) -> Result<GraphDistance, FrechetError> {
    if a.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch { left: a.dim(), right: b.dim() }.into());
    }
    let (sa, sb): (SmoothedGraph, SmoothedGraph) = (smooth(a.graph()), smooth(b.graph()));
    let isos = enumerate_isomorphisms(&sa, &sb, iso_cap)?;
    if isos.is_empty() {
        return Ok(GraphDistance {
            enclosure: Enclosure { lo: f64::INFINITY, hi: f64::INFINITY },
            isomorphism: None,
            circle_error: 0.0,
        });
    }
    let curves_a: Vec<Polyline> = sa.edges.iter().map(|e| a.chain_curve(&e.chain)).collect();
    let curves_b: Vec<Polyline> = sb.edges.iter().map(|e| b.chain_curve(&e.chain)).collect();
    let circ_a: Vec<Polyline> = sa.circles.iter().map(|c| a.chain_curve(&c.chain)).collect();
    let circ_b: Vec<Polyline> = sb.circles.iter().map(|c| b.chain_curve(&c.chain)).collect();
    let mut edge_memo: HashMap<(usize, usize, bool), Enclosure> = HashMap::new();
    let mut circle_memo: HashMap<(usize, usize), (Enclosure, f64)> = HashMap::new();
    let mut best: Option<(Enclosure, usize, f64)> = None;
    for (k, iso) in isos.iter().enumerate() {
        let mut worst = Enclosure::exact(0.0);
        let mut cerr: f64 = 0.0;
        for (va, vb) in &iso.vertex_map {
            let d = a.vertex_point(va).distance(b.vertex_point(vb));
            worst.lo = worst.lo.max(d);
            worst.hi = worst.hi.max(d);
        }
        for pair in &iso.edge_map {
            let key = (pair.source, pair.target, pair.reversed);
            let e = match edge_memo.get(&key) {
                Some(e) => *e,
                None => {
                    let tb = if pair.reversed { curves_b[pair.target].reverse() } else { curves_b[pair.target].clone() };
                    let e = continuous_frechet(&curves_a[pair.source], &tb, tol)?;
                    edge_memo.insert(key, e);
                    e
                }
            };
            worst.lo = worst.lo.max(e.lo);
            worst.hi = worst.hi.max(e.hi);
        }
        for &(ca, cb) in &iso.circle_map {
            let (e, err) = match circle_memo.get(&(ca, cb)) {
                Some(v) => *v,
                None => {
                    let v = circle_distance(&circ_a[ca], &circ_b[cb], tol)?;
                    circle_memo.insert((ca, cb), v);
                    v
                }
            };
            worst.lo = worst.lo.max(e.lo);
            worst.hi = worst.hi.max(e.hi);
            cerr = cerr.max(err);
        }
        best = match best {
            None => Some((worst, k, cerr)),
            Some((b, bk, be)) => {
                let lo = b.lo.min(worst.lo);
                if worst.hi < b.hi {
                    Some((Enclosure { lo, hi: worst.hi }, k, cerr.max(be)))
                } else {
                    Some((Enclosure { lo, hi: b.hi }, bk, be.max(cerr)))
                }
            }
        };
    }
    let (enclosure, k, circle_error) = best.expect("at least one isomorphism");
    Ok(GraphDistance { enclosure, isomorphism: Some(isos[k].clone()), circle_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{MultiGraph, DEFAULT_ISO_CAP};
    use std::collections::BTreeMap;

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn theta(shift: f64) -> GraphMap {
        let g = MultiGraph::from_pairs(&["a", "b", "m1", "m2", "m3"], &[("a", "m1"), ("m1", "b"), ("a", "m2"), ("m2", "b"), ("a", "m3"), ("m3", "b")]).unwrap();
        let mut vp = BTreeMap::new();
        vp.insert("a".to_string(), pt(&[0.0 + shift, 0.0]));
        vp.insert("b".to_string(), pt(&[2.0 + shift, 0.0]));
        vp.insert("m1".to_string(), pt(&[1.0 + shift, 1.0]));
        vp.insert("m2".to_string(), pt(&[1.0 + shift, 0.0]));
        vp.insert("m3".to_string(), pt(&[1.0 + shift, -1.0]));
        GraphMap::straight(g, vp).unwrap()
    }

    #[test]
    fn theta_translate() {
        let tol = Tolerances::default();
        let d = graph_frechet(&theta(0.0), &theta(0.3), &tol, DEFAULT_ISO_CAP).unwrap();
        assert!((d.value() - 0.3).abs() <= 1e-6, "{d:?}");
    }

    #[test]
    fn interval_matches_unoriented_path() {
        let tol = Tolerances::default();
        let p = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 1.0]]).unwrap();
        let q = Polyline::from_coords(&[&[2.0, 1.2], &[0.0, 0.1]]).unwrap();
        let d = graph_frechet(&GraphMap::interval(&p), &GraphMap::interval(&q), &tol, DEFAULT_ISO_CAP).unwrap();
        let u = super::super::path_frechet(&p, &q, false, &tol).unwrap();
        assert!((d.value() - u.value()).abs() <= 2e-6);
    }

    #[test]
    fn non_homeomorphic_is_infinite() {
        let tol = Tolerances::default();
        let p = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap();
        let d = graph_frechet(&GraphMap::interval(&p), &theta(0.0), &tol, DEFAULT_ISO_CAP).unwrap();
        assert!(d.value().is_infinite());
        assert!(d.isomorphism.is_none());
    }

    #[test]
    fn circles_rotate_freely() {
        let tol = Tolerances::default();
        let sq = |s: f64| {
            let g = MultiGraph::from_pairs(&["p", "q", "r", "s"], &[("p", "q"), ("q", "r"), ("r", "s"), ("s", "p")]).unwrap();
            let mut vp = BTreeMap::new();
            let names = ["p", "q", "r", "s"];
            let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
            // relabel so the base vertex differs
            for k in 0..4 {
                let c = pts[(k + if s > 0.0 { 2 } else { 0 }) % 4];
                vp.insert(names[k].to_string(), pt(&c));
            }
            GraphMap::straight(g, vp).unwrap()
        };
        let d = graph_frechet(&sq(0.0), &sq(1.0), &tol, DEFAULT_ISO_CAP).unwrap();
        assert!(d.enclosure.hi <= 1e-6, "{d:?}");
    }
}
