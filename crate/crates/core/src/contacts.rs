//! Hausdorff distance and self-contact detection on polylines.

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::point::Point;
use crate::polyline::{check_dims, Polyline, Tolerances};
use crate::segment::{point_segment_distance, segment_segment};

/// Sampled Hausdorff distance. The true value lies in `[value, value + error]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HausdorffEstimate {
    pub value: f64,
    pub error: f64,
    /// Exact vertex-to-curve distances only; always `<= value`.
    pub lower: f64,
}

/// Number of sample spacings the combined length is divided into.
const HAUSDORFF_RESOLUTION: f64 = 512.0;

pub fn hausdorff_distance(a: &Polyline, b: &Polyline, tol: &Tolerances) -> Result<HausdorffEstimate, GeometryError> {
    check_dims(a, b)?;
    let lower = vertex_to_curve(a, b).max(vertex_to_curve(b, a));
    let spacing = ((a.length() + b.length()) / HAUSDORFF_RESOLUTION).max(tol.eps_dist).max(1e-12);
    let ra = a.refined(spacing);
    let rb = b.refined(spacing);
    let value = vertex_to_curve(&ra, b).max(vertex_to_curve(&rb, a)).max(lower);
    let error = 0.5 * ra.max_segment_length().max(rb.max_segment_length());
    Ok(HausdorffEstimate { value, error, lower })
}

/// Exact distance from a point to the image of a curve.
pub fn point_curve_distance(p: &Point, c: &Polyline) -> f64 {
    if c.len() == 1 {
        return p.distance(c.start());
    }
    let vs = c.vertices();
    (0..c.segment_count())
        .map(|i| point_segment_distance(p.coords(), vs[i].coords(), vs[i + 1].coords()))
        .fold(f64::INFINITY, f64::min)
}

/// max over vertices of `a` of the distance to the image of `b`.
fn vertex_to_curve(a: &Polyline, b: &Polyline) -> f64 {
    a.vertices().iter().map(|v| point_curve_distance(v, b)).fold(0.0, f64::max)
}

/// A locus where a curve touches itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfContact {
    /// The two curve parameters that map to (nearly) the same point.
    pub params: (f64, f64),
    pub point: Point,
    /// For overlapping stretches: the two ends of the shared piece.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlap: Option<(Point, Point)>,
    /// Edge ids the two parameters refer to, for graph-maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<(String, String)>,
}

/// Non-degenerate segments of a curve, with the original vertex indices
/// of their endpoints. Runs of repeated vertices (pauses) collapse.
pub(crate) struct Strand {
    pub start: usize,
    pub end: usize,
}

pub(crate) fn strands(c: &Polyline, eps: f64) -> Vec<Strand> {
    let vs = c.vertices();
    let mut out = Vec::new();
    let mut last = 0;
    for k in 1..vs.len() {
        if vs[k].distance(&vs[last]) > eps {
            out.push(Strand { start: k - 1, end: k });
            last = k;
        }
    }
    out
}

/// All proper self-contacts of `c`: crossings or touches between non-adjacent
/// segments, plus folds where adjacent segments retrace each other.
pub fn self_intersections(c: &Polyline, tol: &Tolerances) -> Vec<SelfContact> {
    let vs = c.vertices();
    let ps = c.params();
    let segs = strands(c, tol.eps_dist);
    let sin_tol = tol.theta_tol.sin().max(1e-15);
    let mut out = Vec::new();
    for i in 0..segs.len() {
        let (a0, a1) = (&vs[segs[i].start], &vs[segs[i].end]);
        let pa = |s: f64| ps[segs[i].start] + s * (ps[segs[i].end] - ps[segs[i].start]);
        if i + 1 < segs.len() {
            // Adjacent pair: only a fold (exact reversal) is a contact.
            let (b0, b1) = (&vs[segs[i + 1].start], &vs[segs[i + 1].end]);
            if let (Some(u), Some(w)) = (a1.sub(a0).normalized(), b1.sub(b0).normalized()) {
                if u.add(&w).norm() <= 2.0 * (0.5 * tol.theta_tol).sin().max(1e-15) {
                    let la = a0.distance(a1);
                    let lb = b0.distance(b1);
                    let ov = la.min(lb);
                    let far = b0.offset(&w, ov);
                    let pb = ps[segs[i + 1].start] + (ov / lb) * (ps[segs[i + 1].end] - ps[segs[i + 1].start]);
                    out.push(SelfContact {
                        params: (pa(1.0 - ov / la), pb),
                        point: b0.lerp(&far, 0.5),
                        overlap: Some((b0.clone(), far)),
                        edges: None,
                    });
                }
            }
        }
        for j in (i + 2)..segs.len() {
            let (b0, b1) = (&vs[segs[j].start], &vs[segs[j].end]);
            let hit = segment_segment(a0.coords(), a1.coords(), b0.coords(), b1.coords(), sin_tol);
            if hit.distance > tol.eps_dist {
                continue;
            }
            let pb = ps[segs[j].start] + hit.t * (ps[segs[j].end] - ps[segs[j].start]);
            let overlap = hit.overlap.filter(|(lo, hi)| hi - lo > 0.0).map(|(lo, hi)| (a0.lerp(a1, lo), a0.lerp(a1, hi)));
            out.push(SelfContact { params: (pa(hit.s), pb), point: a0.lerp(a1, hit.s), overlap, edges: None });
        }
    }
    out.sort_by(|x, y| x.params.partial_cmp(&y.params).unwrap());
    out
}
