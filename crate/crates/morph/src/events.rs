//! Locating the times at which a linear family leaves a class.

use frechet_core::segment::segment_segment;
use frechet_core::Point;

use crate::family::{Family, Layout, Strand};

/// Where and when an event happens on the raw family.
#[derive(Clone, Debug)]
pub struct Root {
    pub t: f64,
    pub strand: usize,
    /// Vertex index (backtracks) or segment index (crossings).
    pub index: usize,
    /// Second segment of a crossing, as `(strand, segment)`.
    pub other: Option<(usize, usize)>,
    pub point: Point,
    /// Directions a repairing displacement should avoid.
    pub avoid: Vec<Point>,
}

const SAMPLES: usize = 64;
const GOLDEN_STEPS: usize = 90;

fn delta(s: &Strand, k: usize) -> (Point, Point) {
    (s.p[k + 1].sub(&s.p[k]), s.q[k + 1].sub(&s.q[k]))
}

/// Time in `(0,1)` at which `(1-t)·dp + t·dq` vanishes, if any.
fn vanishing_time(dp: &Point, dq: &Point, eps: f64) -> Option<f64> {
    let (lp, lq) = (dp.norm(), dq.norm());
    if lp + lq <= eps {
        return None;
    }
    let t = lp / (lp + lq);
    let r = dp.scale(1.0 - t).add(&dq.scale(t)).norm();
    (r <= eps.max(1e-12 * (lp + lq)) && t > 0.0 && t < 1.0).then_some(t)
}

/// Per-segment collapse times `(t, strand, segment)`.
pub fn collapse_times(f: &Family, eps: f64) -> Vec<(f64, usize, usize)> {
    let mut out = Vec::new();
    for (si, s) in f.strands.iter().enumerate() {
        for k in 0..s.segments() {
            let (dp, dq) = delta(s, k);
            if let Some(t) = vanishing_time(&dp, &dq, eps) {
                out.push((t, si, k));
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// The time at which every segment of a path family collapses together.
pub fn singleton_time(f: &Family, eps: f64) -> Option<(f64, Point)> {
    if !matches!(f.layout, Layout::Path) {
        return None;
    }
    let s = &f.strands[0];
    let mut t_star: Option<f64> = None;
    for k in 0..s.segments() {
        let (dp, dq) = delta(s, k);
        if dp.norm() + dq.norm() <= eps {
            continue;
        }
        let t = vanishing_time(&dp, &dq, eps)?;
        match t_star {
            None => t_star = Some(t),
            Some(u) if (u - t).abs() <= 1e-9 => {}
            Some(_) => return None,
        }
    }
    let t = t_star?;
    Some((t, s.p[0].lerp(&s.q[0], t)))
}

fn cross2(a: &Point, b: &Point) -> f64 {
    a.coords()[0] * b.coords()[1] - a.coords()[1] * b.coords()[0]
}

fn sin2(a: &Point, b: &Point) -> f64 {
    let (aa, bb, ab) = (a.dot(a), b.dot(b), a.dot(b));
    if aa <= 0.0 || bb <= 0.0 {
        return 1.0;
    }
    ((aa * bb - ab * ab) / (aa * bb)).max(0.0)
}

/// Minimizes `g` on `[lo, hi]` by golden-section search.
fn golden_min(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..GOLDEN_STEPS {
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - r * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + r * (hi - lo);
            g2 = g(x2);
        }
    }
    let (gl, gh) = (g(lo), g(hi));
    [(x1, g1), (x2, g2), (lo, gl), (hi, gh)].into_iter().fold((x1, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b })
}

/// Times at which an interior vertex turns exactly back on itself.
pub fn backtrack_roots(f: &Family, eps: f64) -> Vec<Root> {
    let mut out = Vec::new();
    if f.dim < 2 {
        return out;
    }
    for (si, s) in f.strands.iter().enumerate() {
        for k in 1..s.segments() {
            let (ap, aq) = delta(s, k - 1);
            let (bp, bq) = delta(s, k);
            let a = |t: f64| ap.lerp(&aq, t);
            let b = |t: f64| bp.lerp(&bq, t);
            let mut ts: Vec<f64> = Vec::new();
            if f.dim == 2 {
                // cross(a(t), b(t)) is a quadratic in t
                let (da, db) = (aq.sub(&ap), bq.sub(&bp));
                let c0 = cross2(&ap, &bp);
                let c1 = cross2(&ap, &db) + cross2(&da, &bp);
                let c2 = cross2(&da, &db);
                let scale = c0.abs().max(c1.abs()).max(c2.abs()).max(1e-300);
                if c2.abs() <= 1e-14 * scale {
                    if c1.abs() > 1e-14 * scale {
                        ts.push(-c0 / c1);
                    }
                } else {
                    let disc = c1 * c1 - 4.0 * c2 * c0;
                    if disc >= -1e-14 * scale * scale {
                        let r = disc.max(0.0).sqrt();
                        ts.push((-c1 - r) / (2.0 * c2));
                        ts.push((-c1 + r) / (2.0 * c2));
                    }
                }
            } else {
                let g = |t: f64| sin2(&a(t), &b(t));
                let vals: Vec<f64> = (0..=SAMPLES).map(|i| g(i as f64 / SAMPLES as f64)).collect();
                for i in 1..SAMPLES {
                    if vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] < 1e-2 {
                        let (t, v) = golden_min((i - 1) as f64 / SAMPLES as f64, (i + 1) as f64 / SAMPLES as f64, g);
                        if v <= 1e-12 {
                            ts.push(t);
                        }
                    }
                }
            }
            for t in ts {
                if !(t > 1e-12 && t < 1.0 - 1e-12) {
                    continue;
                }
                let (av, bv) = (a(t), b(t));
                if av.norm() <= eps || bv.norm() <= eps || av.dot(&bv) >= 0.0 {
                    continue;
                }
                if out.iter().any(|r: &Root| r.strand == si && r.index == k && (r.t - t).abs() < 1e-9) {
                    continue;
                }
                let point = s.p[k].lerp(&s.q[k], t);
                let sweep = bq.sub(&bp);
                out.push(Root { t, strand: si, index: k, other: None, point, avoid: vec![av, sweep] });
            }
        }
    }
    out.sort_by(|x, y| x.t.partial_cmp(&y.t).unwrap());
    out
}

fn segment_at(s: &Strand, k: usize, t: f64) -> (Point, Point) {
    (s.p[k].lerp(&s.q[k], t), s.p[k + 1].lerp(&s.q[k + 1], t))
}

/// Segment pairs that may not touch in an embedding.
fn candidate_pairs(f: &Family) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, sa) in f.strands.iter().enumerate() {
        let na = sa.segments();
        for i in 0..na {
            for j in (i + 2)..na {
                if sa.is_closed() && i == 0 && j == na - 1 {
                    continue;
                }
                out.push((a, i, a, j));
            }
            for (b, sb) in f.strands.iter().enumerate().skip(a + 1) {
                let nb = sb.segments();
                for j in 0..nb {
                    let touching = match (&sa.ends, &sb.ends) {
                        (Some((a0, a1)), Some((b0, b1))) => {
                            let ea: Vec<&String> = [(i == 0).then_some(a0), (i + 1 == na).then_some(a1)].into_iter().flatten().collect();
                            let eb: Vec<&String> = [(j == 0).then_some(b0), (j + 1 == nb).then_some(b1)].into_iter().flatten().collect();
                            ea.iter().any(|x| eb.contains(x))
                        }
                        _ => false,
                    };
                    if !touching {
                        out.push((a, i, b, j));
                    }
                }
            }
        }
    }
    out
}

/// Times at which two non-adjacent segments meet.
pub fn crossing_roots(f: &Family, eps: f64) -> Vec<Root> {
    let mut out = Vec::new();
    let sin_tol = 1e-9;
    for (a, i, b, j) in candidate_pairs(f) {
        let (sa, sb) = (&f.strands[a], &f.strands[b]);
        let vmax = [sa.speed(i), sa.speed(i + 1), sb.speed(j), sb.speed(j + 1)].into_iter().fold(0.0, f64::max);
        let dist = |t: f64| {
            let (p0, p1) = segment_at(sa, i, t);
            let (q0, q1) = segment_at(sb, j, t);
            segment_segment(p0.coords(), p1.coords(), q0.coords(), q1.coords(), sin_tol).distance
        };
        let vals: Vec<f64> = (0..=SAMPLES).map(|m| dist(m as f64 / SAMPLES as f64)).collect();
        let reach = 2.0 * vmax / SAMPLES as f64;
        let mut found: Option<f64> = None;
        for m in 0..SAMPLES {
            if vals[m].min(vals[m + 1]) > reach + eps {
                continue;
            }
            let (lo, hi) = (m as f64 / SAMPLES as f64, (m + 1) as f64 / SAMPLES as f64);
            let (t, v) = if vals[m] <= 1e-12 {
                (lo, vals[m])
            } else {
                golden_min(lo, hi, dist)
            };
            if v <= 1e-9 {
                found = Some(t);
                break;
            }
        }
        let Some(t) = found else { continue };
        if t <= 0.0 || t >= 1.0 {
            continue;
        }
        let (p0, p1) = segment_at(sa, i, t);
        let (q0, q1) = segment_at(sb, j, t);
        let hit = segment_segment(p0.coords(), p1.coords(), q0.coords(), q1.coords(), sin_tol);
        let point = p0.lerp(&p1, hit.s);
        let vel = |s: &Strand, k: usize, u: f64| s.q[k].sub(&s.p[k]).scale(1.0 - u).add(&s.q[k + 1].sub(&s.p[k + 1]).scale(u));
        let rel = vel(sa, i, hit.s).sub(&vel(sb, j, hit.t));
        out.push(Root { t, strand: a, index: i, other: Some((b, j)), point, avoid: vec![p1.sub(&p0), q1.sub(&q0), rel] });
    }
    out.sort_by(|x, y| x.t.partial_cmp(&y.t).unwrap());
    out
}
