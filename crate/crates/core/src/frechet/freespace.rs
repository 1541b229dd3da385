//! Free-space diagram decision procedure and matching extraction.

use serde::{Deserialize, Serialize};

use crate::error::{FrechetError, GeometryError};
use crate::point::{dist, Point};
use crate::polyline::{check_dims, Polyline};

type Interval = Option<(f64, f64)>;

/// Relative slack applied to epsilon so that boundary cases decide inclusively.
const BOUNDARY_SLACK: f64 = 1e-12;

/// A coupled monotone reparameterization of two curves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    /// Parameter pairs `(s, t)`, non-decreasing in both, from `(0,0)` to `(1,1)`.
    /// Between consecutive breakpoints both curves are affine.
    pub breakpoints: Vec<(f64, f64)>,
    /// Largest distance along the coupled traversal.
    pub realized_sup: f64,
}

/// Cell grid of the free space at a fixed epsilon, with reachability marks.
///
/// Vertical edges sit at vertices of `p` (index `i`) and span segment `j` of
/// `q`; horizontal edges sit at vertices of `q` and span segments of `p`.
#[derive(Clone, Debug)]
pub struct FreeSpaceDiagram {
    pub epsilon: f64,
    n: usize,
    m: usize,
    /// `left_free[i][j]`: free `t`-range on the vertical edge at `p_i`, q-segment `j`.
    left_free: Vec<Vec<Interval>>,
    /// `bottom_free[i][j]`: free `s`-range on the horizontal edge at `q_j`, p-segment `i`.
    bottom_free: Vec<Vec<Interval>>,
    left_reach: Vec<Vec<Interval>>,
    bottom_reach: Vec<Vec<Interval>>,
    reachable: bool,
}

/// Internal view: single-vertex curves are doubled into a zero-length segment.
struct Curve<'a> {
    pts: Vec<&'a [f64]>,
    params: Vec<f64>,
}

impl<'a> Curve<'a> {
    fn of(c: &'a Polyline) -> Self {
        if c.len() == 1 {
            let v = c.start().coords();
            Curve { pts: vec![v, v], params: vec![0.0, 1.0] }
        } else {
            Curve { pts: c.vertices().iter().map(|v| v.coords()).collect(), params: c.params().to_vec() }
        }
    }

    fn at(&self, i: usize, s: f64) -> Vec<f64> {
        if i + 1 >= self.pts.len() {
            return self.pts[self.pts.len() - 1].to_vec();
        }
        let (a, b) = (self.pts[i], self.pts[i + 1]);
        a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect()
    }

    fn global(&self, x: f64) -> f64 {
        let i = (x.floor() as usize).min(self.pts.len() - 2);
        let s = x - i as f64;
        self.params[i] + s * (self.params[i + 1] - self.params[i])
    }

    /// Inverse of `global` restricted to segment `i`, clamped to `[0,1]`.
    fn local(&self, i: usize, g: f64) -> f64 {
        let (a, b) = (self.params[i], self.params[i + 1]);
        ((g - a) / (b - a)).clamp(0.0, 1.0)
    }
}

/// Free sub-interval of segment `[a, b]` within distance `eps` of `c`.
fn free_interval(c: &[f64], a: &[f64], b: &[f64], eps: f64) -> Interval {
    let mut qa = 0.0;
    let mut qb = 0.0;
    let mut qc = 0.0;
    for k in 0..c.len() {
        let d = b[k] - a[k];
        let w = a[k] - c[k];
        qa += d * d;
        qb += 2.0 * w * d;
        qc += w * w;
    }
    let e2 = eps * eps;
    qc -= e2;
    if qa <= f64::MIN_POSITIVE {
        return if qc <= 0.0 { Some((0.0, 1.0)) } else { None };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    // numerically stable roots
    let q = -0.5 * (qb + qb.signum() * r);
    let (mut r1, mut r2) = if q != 0.0 { (q / qa, qc / q) } else { (0.0, 0.0) };
    if q == 0.0 {
        r1 = -r / (2.0 * qa);
        r2 = r / (2.0 * qa);
    }
    let lo = r1.min(r2).max(0.0);
    let hi = r1.max(r2).min(1.0);
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

fn clip_from(iv: Interval, from: f64) -> Interval {
    iv.and_then(|(lo, hi)| {
        let lo = lo.max(from);
        if lo <= hi + 1e-12 {
            Some((lo.min(hi), hi))
        } else {
            None
        }
    })
}

fn contains(iv: Interval, x: f64) -> bool {
    iv.is_some_and(|(lo, hi)| lo <= x + 1e-12 && x <= hi + 1e-12)
}

impl FreeSpaceDiagram {
    pub fn build(p: &Polyline, q: &Polyline, epsilon: f64) -> Result<Self, GeometryError> {
        check_dims(p, q)?;
        let (cp, cq) = (Curve::of(p), Curve::of(q));
        Ok(Self::build_curves(&cp, &cq, epsilon))
    }

    fn build_curves(cp: &Curve, cq: &Curve, epsilon: f64) -> Self {
        let n = cp.pts.len();
        let m = cq.pts.len();
        let eps = epsilon.max(0.0) * (1.0 + BOUNDARY_SLACK) + BOUNDARY_SLACK;
        let left_free: Vec<Vec<Interval>> =
            (0..n).map(|i| (0..m - 1).map(|j| free_interval(cp.pts[i], cq.pts[j], cq.pts[j + 1], eps)).collect()).collect();
        let bottom_free: Vec<Vec<Interval>> =
            (0..n - 1).map(|i| (0..m).map(|j| free_interval(cq.pts[j], cp.pts[i], cp.pts[i + 1], eps)).collect()).collect();
        let mut left_reach = vec![vec![None; m - 1]; n];
        let mut bottom_reach = vec![vec![None; m]; n - 1];
        let origin_free = dist(cp.pts[0], cq.pts[0]) <= eps;
        if origin_free {
            // boundary column and row reachable only from the origin
            let mut open = true;
            for j in 0..m - 1 {
                let iv = left_free[0][j];
                if open && contains(iv, 0.0) {
                    left_reach[0][j] = iv.map(|(_, hi)| (0.0, hi));
                    open = contains(iv, 1.0);
                } else {
                    open = false;
                }
            }
            let mut open = true;
            for i in 0..n - 1 {
                let iv = bottom_free[i][0];
                if open && contains(iv, 0.0) {
                    bottom_reach[i][0] = iv.map(|(_, hi)| (0.0, hi));
                    open = contains(iv, 1.0);
                } else {
                    open = false;
                }
            }
        }
        for i in 0..n - 1 {
            for j in 0..m - 1 {
                let from_left = left_reach[i][j];
                let from_bottom = bottom_reach[i][j];
                // right edge of cell (i, j)
                left_reach[i + 1][j] = if from_bottom.is_some() {
                    left_free[i + 1][j]
                } else if let Some((lo, _)) = from_left {
                    clip_from(left_free[i + 1][j], lo)
                } else {
                    None
                };
                // top edge
                bottom_reach[i][j + 1] = if from_left.is_some() {
                    bottom_free[i][j + 1]
                } else if let Some((lo, _)) = from_bottom {
                    clip_from(bottom_free[i][j + 1], lo)
                } else {
                    None
                };
            }
        }
        let reachable = origin_free
            && dist(cp.pts[n - 1], cq.pts[m - 1]) <= eps
            && (contains(left_reach[n - 1][m - 2], 1.0) || contains(bottom_reach[n - 2][m - 1], 1.0));
        Self { epsilon, n, m, left_free, bottom_free, left_reach, bottom_reach, reachable }
    }

    pub fn is_reachable(&self) -> bool {
        self.reachable
    }

    /// Grid size in segments `(p, q)`.
    pub fn cells(&self) -> (usize, usize) {
        (self.n - 1, self.m - 1)
    }

    /// Free `t`-range on the vertical edge at vertex `i` of `p` over segment `j` of `q`.
    pub fn left_free(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.left_free[i][j]
    }

    pub fn bottom_free(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.bottom_free[i][j]
    }

    pub fn left_reachable(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.left_reach[i][j]
    }

    pub fn bottom_reachable(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        self.bottom_reach[i][j]
    }
}

/// Decision version: whether `d_FP(p, q) <= epsilon` (boundary inclusive).
pub fn free_space_decision(p: &Polyline, q: &Polyline, epsilon: f64) -> Result<(bool, FreeSpaceDiagram), GeometryError> {
    let fsd = FreeSpaceDiagram::build(p, q, epsilon)?;
    Ok((fsd.reachable, fsd))
}

/// Extracts a monotone path through reachable free space.
///
/// Tracing runs backwards from `(1,1)`; in each cell the predecessor is the
/// reachable entry point whose step is closest to the parameter diagonal, so
/// curves that are uniformly reparameterized copies match point for point.
pub fn extract_matching(fsd: &FreeSpaceDiagram, p: &Polyline, q: &Polyline) -> Result<Matching, FrechetError> {
    check_dims(p, q)?;
    if !fsd.reachable {
        return Err(FrechetError::NotReachable(fsd.epsilon));
    }
    let (cp, cq) = (Curve::of(p), Curve::of(q));
    if cp.pts.len() != fsd.n || cq.pts.len() != fsd.m {
        return Err(GeometryError::BadParams("diagram was built for different curves".into()).into());
    }
    let mut path: Vec<(f64, f64)> = vec![((fsd.n - 1) as f64, (fsd.m - 1) as f64)];
    loop {
        let (x, y) = *path.last().unwrap();
        if x <= 0.0 && y <= 0.0 {
            break;
        }
        if x <= 0.0 || y <= 0.0 {
            path.push((0.0, 0.0));
            break;
        }
        let i = (x.ceil() as usize) - 1;
        let j = (y.ceil() as usize) - 1;
        let (gx, gy) = (cp.global(x), cq.global(y));
        let mut best: Option<(f64, (f64, f64))> = None;
        let mut consider = |cand: (f64, f64), gcx: f64, gcy: f64| {
            let score = ((gx - gcx) - (gy - gcy)).abs();
            if best.is_none_or(|(b, _)| score < b - 1e-15) {
                best = Some((score, cand));
            }
        };
        if let Some((lo, hi)) = fsd.left_reach[i][j] {
            let top = (y - j as f64).min(1.0);
            if lo <= top + 1e-12 {
                let gi = cp.params[i];
                let ideal = cq.local(j, gy - (gx - gi));
                let t = ideal.clamp(lo, hi.min(top).max(lo));
                consider((i as f64, j as f64 + t), gi, cq.global(j as f64 + t));
            }
        }
        if let Some((lo, hi)) = fsd.bottom_reach[i][j] {
            let right = (x - i as f64).min(1.0);
            if lo <= right + 1e-12 {
                let gj = cq.params[j];
                let ideal = cp.local(i, gx - (gy - gj));
                let s = ideal.clamp(lo, hi.min(right).max(lo));
                consider((i as f64 + s, j as f64), cp.global(i as f64 + s), gj);
            }
        }
        match best {
            Some((_, cand)) => path.push(cand),
            None => return Err(FrechetError::NotReachable(fsd.epsilon)),
        }
    }
    path.reverse();
    // split boundary runs at grid lines so both curves are affine per piece
    let mut pts: Vec<(f64, f64)> = vec![path[0]];
    for w in path.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let mut cuts: Vec<f64> = Vec::new();
        for k in (x0.floor() as i64 + 1)..(x1.ceil() as i64) {
            if (k as f64) > x0 && (k as f64) < x1 {
                cuts.push((k as f64 - x0) / (x1 - x0));
            }
        }
        for k in (y0.floor() as i64 + 1)..(y1.ceil() as i64) {
            if (k as f64) > y0 && (k as f64) < y1 {
                cuts.push((k as f64 - y0) / (y1 - y0));
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for c in cuts {
            pts.push((x0 + c * (x1 - x0), y0 + c * (y1 - y0)));
        }
        pts.push((x1, y1));
    }
    pts.dedup();
    let seg = |x: f64, len: usize| -> (usize, f64) {
        let i = (x.floor() as usize).min(len - 2);
        (i, x - i as f64)
    };
    let mut realized: f64 = 0.0;
    let mut breakpoints = Vec::with_capacity(pts.len());
    for &(x, y) in &pts {
        let (i, s) = seg(x, cp.pts.len());
        let (j, t) = seg(y, cq.pts.len());
        realized = realized.max(dist(&cp.at(i, s), &cq.at(j, t)));
        let (gs, gt) = (cp.global(x), cq.global(y));
        breakpoints.push((gs, gt));
    }
    // enforce exact monotonicity against rounding
    for k in 1..breakpoints.len() {
        breakpoints[k].0 = breakpoints[k].0.max(breakpoints[k - 1].0);
        breakpoints[k].1 = breakpoints[k].1.max(breakpoints[k - 1].1);
    }
    breakpoints[0] = (0.0, 0.0);
    *breakpoints.last_mut().unwrap() = (1.0, 1.0);
    Ok(Matching { breakpoints, realized_sup: realized })
}

impl Matching {
    /// Points of `p` and `q` at each breakpoint.
    pub fn sample(&self, p: &Polyline, q: &Polyline) -> Vec<(Point, Point)> {
        self.breakpoints.iter().map(|&(s, t)| (p.eval(s), q.eval(t))).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.breakpoints.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(rows: &[&[f64]]) -> Polyline {
        Polyline::from_coords(rows).unwrap()
    }

    #[test]
    fn parallel_segments_boundary() {
        let p = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let q = pl(&[&[0.0, 1.0], &[1.0, 1.0]]);
        assert!(free_space_decision(&p, &q, 1.0).unwrap().0);
        assert!(!free_space_decision(&p, &q, 0.99).unwrap().0);
    }

    #[test]
    fn free_intervals_stay_in_unit_range() {
        let p = pl(&[&[0.0, 0.0], &[1.0, 2.0], &[3.0, -1.0]]);
        let q = pl(&[&[0.5, 0.0], &[2.0, 1.0], &[2.5, -1.5], &[3.0, -1.0]]);
        let fsd = FreeSpaceDiagram::build(&p, &q, 1.1).unwrap();
        let (a, b) = fsd.cells();
        for i in 0..=a {
            for j in 0..b {
                if let Some((lo, hi)) = fsd.left_free(i, j) {
                    assert!(0.0 <= lo && lo <= hi && hi <= 1.0);
                }
                // reachable ⊆ free
                if let Some((lo, hi)) = fsd.left_reachable(i, j) {
                    let (flo, fhi) = fsd.left_free(i, j).unwrap();
                    assert!(flo <= lo + 1e-12 && hi <= fhi + 1e-12);
                }
            }
        }
    }

    #[test]
    fn identical_curves_match_diagonally() {
        let p = pl(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 0.0]]);
        let (ok, fsd) = free_space_decision(&p, &p, 1e-6).unwrap();
        assert!(ok);
        let m = extract_matching(&fsd, &p, &p).unwrap();
        assert!(m.realized_sup <= 1e-6);
        assert!(m.breakpoints.iter().all(|(s, t)| (s - t).abs() < 1e-9));
    }

    #[test]
    fn translates_match_at_offset() {
        let p = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.5]]);
        let q = p.map_points(|v| v.offset(&Point::new(vec![0.0, 1.0]).unwrap(), 1.0));
        let (ok, fsd) = free_space_decision(&p, &q, 1.0).unwrap();
        assert!(ok);
        let m = extract_matching(&fsd, &p, &q).unwrap();
        assert!((m.realized_sup - 1.0).abs() < 1e-9);
        assert!(m.is_monotone());
    }

    #[test]
    fn extraction_requires_positive_decision() {
        let p = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let q = pl(&[&[0.0, 1.0], &[1.0, 1.0]]);
        let (_, fsd) = free_space_decision(&p, &q, 0.5).unwrap();
        assert!(matches!(extract_matching(&fsd, &p, &q), Err(FrechetError::NotReachable(_))));
    }
}
