//! Four-phase embedding morph: shrink the source onto its final segment,
//! turn and scale that segment, slide it onto the target's final segment,
//! then grow the target back out of it.

use frechet_core::point::perpendicular;
use frechet_core::{continuous_frechet, ClassLabel, Point, Polyline, Shape};

use crate::engine::{classify_shape, extend_shape, shape_distance, MorphContext};
use crate::error::MorphError;
use crate::family::no_maneuver;
use crate::sequence::{EventKind, Frame, Location, MorphSequence, Obstruction};

/// Frames per phase: `k - 1` intervals split as evenly as possible.
fn phase_counts(intervals: usize) -> [usize; 4] {
    let base = intervals / 4;
    let extra = intervals % 4;
    let mut out = [base; 4];
    for c in out.iter_mut().take(extra) {
        *c += 1;
    }
    out
}

fn last_segment(c: &Polyline) -> (Point, Point, f64) {
    let vs = c.vertices();
    let n = vs.len();
    (vs[n - 2].clone(), vs[n - 1].clone(), c.params()[n - 2])
}

fn segment(mid: &Point, dir: &Point, len: f64) -> Polyline {
    Polyline::new(vec![mid.offset(dir, -0.5 * len), mid.offset(dir, 0.5 * len)]).expect("segment endpoints are finite")
}

/// Unit direction turning from `a` to `b` as `s` goes from 0 to 1.
fn turn(a: &Point, b: &Point, s: f64) -> Option<Point> {
    let c = a.dot(b).clamp(-1.0, 1.0);
    let theta = c.acos();
    if theta < 1e-12 {
        return Some(a.clone());
    }
    // unit vector orthogonal to a in the turning plane
    let ortho = b.offset(a, -c).normalized().or_else(|| perpendicular(a))?;
    Some(a.scale((theta * s).cos()).add(&ortho.scale((theta * s).sin())))
}

/// Path tail `c` restricted to `[u, 1]`, where `u` runs from 0 to the start
/// of the last segment as `s` runs from 0 to 1.
fn tail(c: &Polyline, s: f64) -> Result<Polyline, MorphError> {
    let (_, _, u_last) = last_segment(c);
    let u = (s * u_last).min(u_last);
    if u <= 0.0 {
        return Ok(c.clone());
    }
    Ok(c.restrict(u, 1.0)?)
}

/// Arc length of `c` between parameters `a < b`.
fn arc_length(c: &Polyline, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let ps = c.params();
    let mut pts = vec![c.eval(a)];
    pts.extend(c.vertices().iter().zip(ps).filter(|(_, &u)| u > a && u < b).map(|(v, _)| v.clone()));
    pts.push(c.eval(b));
    pts.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

/// Embedding morph built from restrictions and a similarity motion of a
/// single segment; every frame is an embedding whenever the inputs are.
pub fn embed_morph(p: &Polyline, q: &Polyline, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    if ctx.frames < 2 {
        return Err(MorphError::TooFewFrames(ctx.frames));
    }
    let tol = &ctx.tol;
    for c in [p, q] {
        let found = classify_shape(&Shape::Path(c.clone()), tol).class_label;
        if found != ClassLabel::E {
            return Err(MorphError::InputClass { found: found.to_string(), needed: "E".into() });
        }
    }
    let (a0, a1, ua) = last_segment(p);
    let (b0, b1, ub) = last_segment(q);
    let (la, lb) = (a0.distance(&a1), b0.distance(&b1));
    if la <= tol.eps_dist || lb <= tol.eps_dist {
        return Err(MorphError::Degenerate("final segment has zero length".into()));
    }
    let (da, db) = (a1.sub(&a0).scale(1.0 / la), b1.sub(&b0).scale(1.0 / lb));
    let (ma, mb) = (a0.lerp(&a1, 0.5), b0.lerp(&b1, 0.5));
    if turn(&da, &db, 0.5).is_none() {
        return Err(MorphError::Unsupported("cannot turn a segment around in dimension 1".into()));
    }
    let counts = phase_counts(ctx.frames - 1);

    // (t, phase, local s)
    let mut stamps: Vec<(f64, usize, f64)> = vec![(0.0, 0, 0.0)];
    for (ph, &n) in counts.iter().enumerate() {
        for j in 1..=n {
            let s = j as f64 / n as f64;
            stamps.push((0.25 * (ph as f64 + s), ph, s));
        }
    }
    let shape_at = |ph: usize, s: f64| -> Result<Polyline, MorphError> {
        Ok(match ph {
            0 => tail(p, s)?,
            1 => segment(&ma, &turn(&da, &db, s).expect("checked above"), la + (lb - la) * s),
            2 => segment(&ma.lerp(&mb, s), &db, lb),
            _ => tail(q, 1.0 - s)?,
        })
    };
    let step = |ph: usize, s0: f64, s1: f64| -> f64 {
        match ph {
            0 => arc_length(p, s0 * ua, s1 * ua),
            3 => arc_length(q, (1.0 - s1) * ub, (1.0 - s0) * ub),
            _ => {
                let (x, y) = (shape_at(ph, s0).expect("segment"), shape_at(ph, s1).expect("segment"));
                x.start().distance(y.start()).max(x.end().distance(y.end()))
            }
        }
    };

    let center = ctx.ball.as_ref().map(|b| (extend_shape(&b.center, p.dim()), b.radius));
    let mut frames = Vec::with_capacity(stamps.len());
    let mut step_bounds = Vec::new();
    let mut events = Vec::new();
    let mut obstruction: Option<Obstruction> = None;
    for (i, &(t, ph, s)) in stamps.iter().enumerate() {
        let shape = Shape::Path(shape_at(ph, s)?);
        let report = classify_shape(&shape, tol);
        if report.class_label != ClassLabel::E {
            events.push(no_maneuver(t, EventKind::SelfCross, Location::Id(format!("frame@{t}"))));
            obstruction = Some(Obstruction { constraint: "class".into(), t, margin: 0.0, kind: EventKind::SelfCross, detail: "frame is not embedded".into() });
        }
        if let Some((c, r)) = &center {
            let d = shape_distance(&shape, c, tol, ctx.iso_cap)?;
            if d.hi >= *r && obstruction.is_none() {
                obstruction = Some(Obstruction {
                    constraint: "ball".into(),
                    t,
                    margin: d.hi - r,
                    kind: EventKind::SelfCross,
                    detail: format!("frame distance {} reaches the radius {r}", d.hi),
                });
            }
        }
        if i > 0 {
            let (_, _, s_prev) = stamps[i - 1];
            let s0 = if stamps[i - 1].1 == ph { s_prev } else { 0.0 };
            step_bounds.push(step(ph, s0, s));
        }
        frames.push(Frame { t, shape });
        if obstruction.is_some() {
            break;
        }
    }
    let d0 = continuous_frechet(p, q, tol)?.hi;
    Ok(MorphSequence { strategy: "alexander".into(), target_class: ClassLabel::E, frames, events, step_bounds, d0, obstruction })
}
