//! Frame-level maneuvers: pause rerouting, Q-tip caps, half-turn planes and
//! lift directions.

use frechet_core::{Point, Polyline, Tolerances};

use crate::error::MorphError;
use crate::sequence::{EventKind, Maneuver};

/// One removed pause: where it was and how it was removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Reroute {
    pub kind: EventKind,
    pub maneuver: Maneuver,
    pub at: f64,
}

/// Removes every pause while keeping the image.
///
/// Interior pauses are absorbed by stretching the following segment over the
/// paused parameter span. Pauses touching an end are trimmed off by
/// restricting the curve and renormalizing.
pub fn reroute_pauses(c: &Polyline, tol: &Tolerances) -> Result<(Polyline, Vec<Reroute>), MorphError> {
    let vs = c.vertices();
    let ps = c.params();
    let n = vs.len();
    if n == 1 || vs.iter().all(|v| v.distance(&vs[0]) <= tol.eps_dist) {
        return Err(MorphError::Degenerate("frame is a constant map; only a dodge can avoid it".into()));
    }
    // group consecutive coincident vertices into runs
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < n {
        let mut e = k;
        while e + 1 < n && vs[e + 1].distance(&vs[k]) <= tol.eps_dist {
            e += 1;
        }
        runs.push((k, e));
        k = e + 1;
    }
    if runs.len() == n {
        return Ok((c.clone(), Vec::new()));
    }
    let mut out = Vec::new();
    let mut keep_v: Vec<Point> = Vec::new();
    let mut keep_p: Vec<f64> = Vec::new();
    let last = runs.len() - 1;
    for (r, &(a, b)) in runs.iter().enumerate() {
        if r == 0 {
            // keep the last vertex of an initial run; the trim renormalizes below
            keep_v.push(vs[b].clone());
            keep_p.push(ps[b]);
            if b > a {
                out.push(Reroute { kind: EventKind::EndpointPause, maneuver: Maneuver::Trim, at: ps[b] });
            }
        } else if r == last {
            keep_v.push(vs[a].clone());
            keep_p.push(ps[a]);
            if b > a {
                out.push(Reroute { kind: EventKind::EndpointPause, maneuver: Maneuver::Trim, at: ps[a] });
            }
        } else {
            keep_v.push(vs[a].clone());
            keep_p.push(ps[a]);
            if b > a {
                out.push(Reroute { kind: EventKind::Pause, maneuver: Maneuver::Reroute, at: ps[a] });
            }
        }
    }
    let (lo, hi) = (keep_p[0], *keep_p.last().unwrap());
    let params: Vec<f64> = keep_p.iter().map(|u| (u - lo) / (hi - lo)).collect();
    let mut params = params;
    params[0] = 0.0;
    *params.last_mut().unwrap() = 1.0;
    Ok((Polyline::with_params(keep_v, params)?, out))
}

/// Loop vertices inserted after a tip `v` reached along unit direction `a`.
///
/// The loop is a square of diagonal `radius` spanned by `a` and `normal`
/// (made orthogonal to `a`), and returns to `v`. All points lie within
/// `radius` of `v`.
pub fn qtip_loop(v: &Point, a: &Point, normal: &Point, radius: f64) -> Vec<Point> {
    let n = normal.offset(a, -normal.dot(a)).normalized().unwrap_or_else(|| normal.clone());
    let s = radius / std::f64::consts::SQRT_2;
    let p1 = v.offset(&n, s);
    let p2 = p1.offset(a, s);
    let p3 = v.offset(a, s);
    vec![p1, p2, p3, v.clone()]
}

/// Replaces the tip at vertex `k` by a Q-tip loop of the given radius, using
/// a perpendicular of the incoming direction as the loop plane.
pub fn qtip_inflate(c: &Polyline, k: usize, radius: f64) -> Result<Polyline, MorphError> {
    let vs = c.vertices();
    if k == 0 || k + 1 >= vs.len() {
        return Err(MorphError::Unsupported("Q-tip needs an interior vertex".into()));
    }
    if radius <= 0.0 {
        return Err(MorphError::Degenerate(format!("Q-tip radius must be positive, got {radius}")));
    }
    let a = vs[k].sub(&vs[k - 1]).normalized().ok_or_else(|| MorphError::Degenerate("zero-length incoming segment".into()))?;
    let n = frechet_core::point::perpendicular(&a).ok_or_else(|| MorphError::Unsupported("no perpendicular in dimension 1".into()))?;
    let mut pts: Vec<Point> = vs[..=k].to_vec();
    pts.extend(qtip_loop(&vs[k], &a, &n, radius));
    pts.extend(vs[k + 1..].iter().cloned());
    Ok(Polyline::new(pts)?)
}

/// Orthonormal planes whose simultaneous half-turns negate every vector in
/// `span(dirs)`. Returns `None` when the span has odd dimension equal to the
/// ambient dimension (no spare axis to pair with).
pub fn half_turn_planes(dirs: &[Point], dim: usize) -> Option<Vec<(Point, Point)>> {
    let mut basis: Vec<Point> = Vec::new();
    for d in dirs {
        let mut r = d.clone();
        for b in &basis {
            r = r.offset(b, -r.dot(b));
        }
        if r.norm() > 1e-9 * d.norm().max(1.0) {
            basis.push(r.normalized().unwrap());
        }
    }
    if basis.is_empty() {
        return None;
    }
    if basis.len() % 2 == 1 {
        let extra = orthogonal_axis(&basis, dim)?;
        basis.push(extra);
    }
    Some(basis.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
}

/// Unit vector orthogonal to all of `avoid`, taken from the coordinate axis
/// with the largest residual.
pub fn orthogonal_axis(avoid: &[Point], dim: usize) -> Option<Point> {
    let mut basis: Vec<Point> = Vec::new();
    for d in avoid {
        let mut r = d.clone();
        for b in &basis {
            r = r.offset(b, -r.dot(b));
        }
        if let Some(u) = r.normalized() {
            if r.norm() > 1e-12 {
                basis.push(u);
            }
        }
    }
    let mut best: Option<(f64, Point)> = None;
    for axis in (0..dim).rev() {
        let mut r = Point::basis(dim, axis);
        for b in &basis {
            r = r.offset(b, -r.dot(b));
        }
        let len = r.norm();
        if best.as_ref().is_none_or(|(l, _)| len > *l + 1e-12) {
            best = Some((len, r));
        }
    }
    best.filter(|(l, _)| *l > 1e-9).and_then(|(_, r)| r.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use frechet_core::{classify_path, continuous_frechet, ClassLabel};

    fn pt(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn interior_pause_keeps_image() {
        let tol = Tolerances::default();
        let c = Polyline::with_params(vec![pt(&[0.0, 0.0]), pt(&[1.0, 0.0]), pt(&[1.0, 0.0]), pt(&[1.0, 1.0])], vec![0.0, 0.4, 0.6, 1.0]).unwrap();
        let (r, ev) = reroute_pauses(&c, &tol).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].kind, EventKind::Pause);
        assert_eq!(r.len(), 3);
        assert!(r.params().windows(2).all(|w| w[1] > w[0]));
        assert!(frechet_core::detect_pauses(&r, &tol).is_empty());
        assert!(continuous_frechet(&c, &r, &tol).unwrap().hi <= tol.eps_dist);
    }

    #[test]
    fn endpoint_pause_is_trimmed() {
        let tol = Tolerances::default();
        let c = Polyline::with_params(vec![pt(&[0.0]), pt(&[2.0]), pt(&[2.0])], vec![0.0, 0.9, 1.0]).unwrap();
        let (r, ev) = reroute_pauses(&c, &tol).unwrap();
        assert_eq!(ev[0].kind, EventKind::EndpointPause);
        assert_eq!(ev[0].maneuver, Maneuver::Trim);
        // the restriction to [0, 0.9], renormalized
        let expect = c.restrict(0.0, 0.9).unwrap();
        assert_eq!(r.vertices(), expect.vertices());
        assert_eq!(r.params(), expect.params());
    }

    #[test]
    fn constant_frame_cannot_be_rerouted() {
        let c = Polyline::with_params(vec![pt(&[1.0, 1.0]), pt(&[1.0, 1.0])], vec![0.0, 1.0]).unwrap();
        assert!(reroute_pauses(&c, &Tolerances::default()).is_err());
    }

    #[test]
    fn qtip_removes_backtrack_within_radius() {
        let tol = Tolerances::default();
        let c = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[0.4, 0.0]]).unwrap();
        assert_eq!(classify_path(&c, &tol).class_label, ClassLabel::C);
        let r = qtip_inflate(&c, 1, 0.05).unwrap();
        let rep = classify_path(&r, &tol);
        assert_eq!(rep.class_label, ClassLabel::I, "{rep:?}");
        assert!(continuous_frechet(&c, &r, &tol).unwrap().lo <= 0.05 + 1e-9);
        let tip = pt(&[1.0, 0.0]);
        assert!(r.vertices()[2..6].iter().all(|v| v.distance(&tip) <= 0.05 + 1e-12));
    }

    #[test]
    fn qtip_converges_as_radius_shrinks() {
        let tol = Tolerances::default();
        let c = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[0.4, 0.0]]).unwrap();
        let mut last = f64::INFINITY;
        for r in [0.1, 0.01, 0.001] {
            let d = continuous_frechet(&c, &qtip_inflate(&c, 1, r).unwrap(), &tol).unwrap().hi;
            assert!(d <= r + 1e-6 && d <= last);
            last = d;
        }
    }

    #[test]
    fn qtip_needs_two_dimensions() {
        let c = Polyline::from_coords(&[&[0.0], &[1.0], &[0.4]]).unwrap();
        assert!(matches!(qtip_inflate(&c, 1, 0.05), Err(MorphError::Unsupported(_))));
    }

    #[test]
    fn half_turn_planes_pair_up_odd_spans() {
        let planes = half_turn_planes(&[pt(&[1.0, 0.0])], 2).unwrap();
        assert_eq!(planes.len(), 1);
        assert!(half_turn_planes(&[pt(&[1.0])], 1).is_none());
        assert!(half_turn_planes(&[pt(&[1.0, 0.0, 0.0]), pt(&[0.0, 1.0, 0.0]), pt(&[0.0, 0.0, 1.0])], 3).is_none());
        assert_eq!(half_turn_planes(&[pt(&[1.0, 0.0, 0.0, 0.0]), pt(&[0.0, 1.0, 0.0, 0.0]), pt(&[0.0, 0.0, 1.0, 0.0])], 4).unwrap().len(), 2);
    }

    #[test]
    fn orthogonal_axis_prefers_last_coordinate() {
        let n = orthogonal_axis(&[pt(&[1.0, 0.0, 0.0, 0.0]), pt(&[0.0, 1.0, 1.0, 0.0])], 4).unwrap();
        assert!(n.distance(&pt(&[0.0, 0.0, 0.0, 1.0])) < 1e-12);
    }
}
