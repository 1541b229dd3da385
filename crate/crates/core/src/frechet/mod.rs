//! Fréchet distances between curves and graph-maps.

mod engine;
mod freespace;
mod graph_distance;

use serde::{Deserialize, Serialize};

pub use engine::{DistanceEngine, DistanceReport, EngineOptions, EngineRegistry, Shape};
pub use freespace::{extract_matching, free_space_decision, FreeSpaceDiagram, Matching};
pub use graph_distance::{align_circle, graph_frechet, GraphDistance};

use crate::error::{FrechetError, GeometryError};
use crate::point::dist;
use crate::polyline::{check_dims, Polyline, Tolerances};

/// Certified bracket around a distance: the true value lies in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn exact(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn value(&self) -> f64 {
        if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn width(&self) -> f64 {
        if self.hi.is_infinite() {
            0.0
        } else {
            self.hi - self.lo
        }
    }
}

/// Discrete Fréchet distance over vertex couplings.
pub fn discrete_frechet(p: &Polyline, q: &Polyline) -> Result<f64, GeometryError> {
    check_dims(p, q)?;
    let (a, b) = (p.vertices(), q.vertices());
    let m = b.len();
    let mut prev = vec![0.0f64; m];
    let mut cur = vec![0.0f64; m];
    for i in 0..a.len() {
        for j in 0..m {
            let d = dist(a[i].coords(), b[j].coords());
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m - 1])
}

fn vertex_lower_bound(p: &Polyline, q: &Polyline) -> f64 {
    let directed = |a: &Polyline, b: &Polyline| {
        a.vertices().iter().map(|v| crate::contacts::point_curve_distance(v, b)).fold(0.0, f64::max)
    };
    directed(p, q).max(directed(q, p))
}

/// Continuous Fréchet distance, bracketed to width at most `tol.eps_dist`.
pub fn continuous_frechet(p: &Polyline, q: &Polyline, tol: &Tolerances) -> Result<Enclosure, GeometryError> {
    check_dims(p, q)?;
    tol.validate()?;
    let ends = p.start().distance(q.start()).max(p.end().distance(q.end()));
    let mut lo = ends.max(vertex_lower_bound(p, q));
    let mut hi = discrete_frechet(p, q)?.max(lo);
    if hi - lo <= tol.eps_dist {
        return Ok(Enclosure { lo, hi });
    }
    if free_space_decision(p, q, lo)?.0 {
        return Ok(Enclosure::exact(lo));
    }
    while hi - lo > tol.eps_dist {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if free_space_decision(p, q, mid)?.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Enclosure { lo, hi })
}

/// Whether `d_FP(p, q) <= bound`, decided directly on the free space.
pub fn frechet_at_most(p: &Polyline, q: &Polyline, bound: f64) -> Result<bool, GeometryError> {
    Ok(free_space_decision(p, q, bound)?.0)
}

/// Path Fréchet distance; unoriented takes the better of both directions of `q`.
pub fn path_frechet(p: &Polyline, q: &Polyline, oriented: bool, tol: &Tolerances) -> Result<Enclosure, GeometryError> {
    let fwd = continuous_frechet(p, q, tol)?;
    if oriented {
        return Ok(fwd);
    }
    let rev = continuous_frechet(p, &q.reverse(), tol)?;
    Ok(Enclosure { lo: fwd.lo.min(rev.lo), hi: fwd.hi.min(rev.hi) })
}

/// Computes the distance and a matching realizing it up to the bracket width.
pub fn frechet_with_matching(p: &Polyline, q: &Polyline, tol: &Tolerances) -> Result<(Enclosure, Matching), FrechetError> {
    let enc = continuous_frechet(p, q, tol)?;
    let (ok, fsd) = free_space_decision(p, q, enc.hi)?;
    if !ok {
        return Err(FrechetError::NotReachable(enc.hi));
    }
    let m = extract_matching(&fsd, p, q)?;
    Ok((enc, m))
}
