//! Closest-point queries between points and segments in ℝⁿ.

use crate::point::{dist, dot};

/// Closest point on segment `[a, b]` to `p`, as the local coordinate in `[0,1]`.
pub fn project_point(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut ab2 = 0.0;
    let mut ap_ab = 0.0;
    for k in 0..p.len() {
        let d = b[k] - a[k];
        ab2 += d * d;
        ap_ab += (p[k] - a[k]) * d;
    }
    if ab2 <= 0.0 {
        0.0
    } else {
        (ap_ab / ab2).clamp(0.0, 1.0)
    }
}

pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let s = project_point(p, a, b);
    let mut d2 = 0.0;
    for k in 0..p.len() {
        let q = a[k] + s * (b[k] - a[k]);
        d2 += (p[k] - q) * (p[k] - q);
    }
    d2.sqrt()
}

/// Result of a segment/segment closest-point query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentContact {
    pub s: f64,
    pub t: f64,
    pub distance: f64,
    /// For (near) parallel segments whose projections overlap: the overlap
    /// range on the first segment as local coordinates.
    pub overlap: Option<(f64, f64)>,
}

/// Closest points between segments `[p0, p1]` and `[q0, q1]`.
///
/// `parallel_tol` is the sine of the angle below which the segments are
/// treated as parallel.
pub fn segment_segment(p0: &[f64], p1: &[f64], q0: &[f64], q1: &[f64], parallel_tol: f64) -> SegmentContact {
    let n = p0.len();
    let d1: Vec<f64> = (0..n).map(|k| p1[k] - p0[k]).collect();
    let d2: Vec<f64> = (0..n).map(|k| q1[k] - q0[k]).collect();
    let r: Vec<f64> = (0..n).map(|k| p0[k] - q0[k]).collect();
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let at = |u: &[f64], d: &[f64], s: f64| -> Vec<f64> { u.iter().zip(d).map(|(x, y)| x + s * y).collect() };

    if a <= f64::MIN_POSITIVE && e <= f64::MIN_POSITIVE {
        return SegmentContact { s: 0.0, t: 0.0, distance: dist(p0, q0), overlap: None };
    }
    if a <= f64::MIN_POSITIVE {
        let t = (f / e).clamp(0.0, 1.0);
        return SegmentContact { s: 0.0, t, distance: dist(p0, &at(q0, &d2, t)), overlap: None };
    }
    let c = dot(&d1, &r);
    if e <= f64::MIN_POSITIVE {
        let s = (-c / a).clamp(0.0, 1.0);
        return SegmentContact { s, t: 0.0, distance: dist(&at(p0, &d1, s), q0), overlap: None };
    }
    let b = dot(&d1, &d2);
    let denom = a * e - b * b;
    let sin2 = (denom / (a * e)).max(0.0);
    if sin2.sqrt() <= parallel_tol {
        return parallel_contact(p0, &d1, q0, &d2, a);
    }
    let mut s = ((b * f - c * e) / denom).clamp(0.0, 1.0);
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let distance = dist(&at(p0, &d1, s), &at(q0, &d2, t));
    SegmentContact { s, t, distance, overlap: None }
}

fn parallel_contact(p0: &[f64], d1: &[f64], q0: &[f64], d2: &[f64], a: f64) -> SegmentContact {
    // Project q's endpoints on p's supporting line.
    let n = p0.len();
    let q1: Vec<f64> = (0..n).map(|k| q0[k] + d2[k]).collect();
    let proj = |x: &[f64]| -> f64 {
        let v: Vec<f64> = (0..n).map(|k| x[k] - p0[k]).collect();
        dot(&v, d1) / a
    };
    let (u0, u1) = (proj(q0), proj(&q1));
    let lo = u0.min(u1).max(0.0);
    let hi = u0.max(u1).min(1.0);
    let at_p = |s: f64| -> Vec<f64> { (0..n).map(|k| p0[k] + s * d1[k]).collect() };
    if lo <= hi {
        let s = 0.5 * (lo + hi);
        let x = at_p(s);
        let t = project_point(&x, q0, &q1);
        let distance = point_segment_distance(&x, q0, &q1);
        SegmentContact { s, t, distance, overlap: Some((lo, hi)) }
    } else {
        // Disjoint projections: closest pair is among endpoints.
        let p1 = at_p(1.0);
        let cands = [
            (0.0, project_point(p0, q0, &q1)),
            (1.0, project_point(&p1, q0, &q1)),
            (project_point(q0, p0, &p1), 0.0),
            (project_point(&q1, p0, &p1), 1.0),
        ];
        let mut best = SegmentContact { s: 0.0, t: 0.0, distance: f64::INFINITY, overlap: None };
        for (s, t) in cands {
            let x = at_p(s);
            let y: Vec<f64> = (0..n).map(|k| q0[k] + t * d2[k]).collect();
            let d = dist(&x, &y);
            if d < best.distance {
                best = SegmentContact { s, t, distance: d, overlap: None };
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_segments() {
        let c = segment_segment(&[0.0, 0.0], &[1.0, 1.0], &[1.0, 0.0], &[0.0, 1.0], 1e-9);
        assert!(c.distance < 1e-12);
        assert!((c.s - 0.5).abs() < 1e-12 && (c.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn skew_segments_in_3d() {
        let c = segment_segment(&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, -1.0, 0.5], &[0.0, 1.0, 0.5], 1e-9);
        assert!((c.distance - 0.5).abs() < 1e-12);
    }

    #[test]
    fn collinear_overlap() {
        let c = segment_segment(&[0.0, 0.0], &[2.0, 0.0], &[3.0, 0.0], &[1.0, 0.0], 1e-9);
        assert_eq!(c.distance, 0.0);
        let (lo, hi) = c.overlap.unwrap();
        assert!((lo - 0.5).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_apart() {
        let c = segment_segment(&[0.0, 0.0], &[1.0, 0.0], &[2.0, 1.0], &[3.0, 1.0], 1e-9);
        assert!((c.distance - 2f64.sqrt()).abs() < 1e-12);
    }
}
