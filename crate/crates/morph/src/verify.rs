//! Independent checks on a finished morph sequence.

use serde::{Deserialize, Serialize};

use frechet_core::{frechet_at_most, graph_frechet, Shape, Tolerances};

use crate::engine::{classify_shape, extend_shape, shape_distance, Ball};
use crate::error::MorphError;
use crate::sequence::{Maneuver, MorphSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub frames_checked: usize,
    pub class_ok: bool,
    pub continuity_ok: bool,
    /// `None` when no ball was given.
    pub ball_ok: Option<bool>,
    /// Largest frame distance to the ball center.
    pub max_center_distance: Option<f64>,
    /// Index of the first offending frame.
    pub worst_frame: Option<usize>,
    pub failure: Option<String>,
}

/// Whether `d(a, b) ≤ bound` for two frames.
fn within(a: &Shape, b: &Shape, bound: f64, tol: &Tolerances, iso_cap: usize) -> Result<bool, MorphError> {
    match (a, b) {
        (Shape::Path(p), Shape::Path(q)) => Ok(frechet_at_most(p, q, bound)?),
        _ => Ok(graph_frechet(&a.as_graph(), &b.as_graph(), tol, iso_cap)?.enclosure.lo <= bound),
    }
}

/// Checks class membership of every frame, the step-to-step continuity
/// bound, and (optionally) strict containment in a ball.
pub fn verify_morph(seq: &MorphSequence, ball: Option<&Ball>, tol: &Tolerances, iso_cap: usize) -> Result<VerificationReport, MorphError> {
    let mut rep = VerificationReport {
        passed: false,
        frames_checked: seq.frames.len(),
        class_ok: true,
        continuity_ok: true,
        ball_ok: ball.map(|_| true),
        max_center_distance: None,
        worst_frame: None,
        failure: None,
    };
    let fail = |rep: &mut VerificationReport, i: usize, msg: String| {
        if rep.failure.is_none() {
            rep.worst_frame = Some(i);
            rep.failure = Some(msg);
        }
    };
    if let Some(o) = &seq.obstruction {
        fail(&mut rep, seq.frames.len().saturating_sub(1), format!("obstructed at t = {}: {}", o.t, o.detail));
    }
    for (i, f) in seq.frames.iter().enumerate() {
        let label = classify_shape(&f.shape, tol).class_label;
        if !label.satisfies(seq.target_class) {
            rep.class_ok = false;
            fail(&mut rep, i, format!("frame {i} (t = {}) has class {label}, needs {}", f.t, seq.target_class));
        }
    }
    for (i, w) in seq.frames.windows(2).enumerate() {
        let (a, b) = (w[0].t, w[1].t);
        let base = seq.step_bounds.get(i).copied().unwrap_or((b - a) * seq.d0);
        let allowance: f64 = seq.events_in(a, b).filter(|e| e.maneuver_applied != Maneuver::None).map(|e| 2.0 * e.magnitude).sum();
        let bound = base + allowance + tol.eps_dist;
        if !within(&w[0].shape, &w[1].shape, bound, tol, iso_cap)? {
            rep.continuity_ok = false;
            fail(&mut rep, i + 1, format!("step {i} -> {} exceeds its bound {bound}", i + 1));
        }
    }
    if let Some(ball) = ball {
        let mut worst: f64 = 0.0;
        for (i, f) in seq.frames.iter().enumerate() {
            let center = extend_shape(&ball.center, f.shape.dim());
            let d = shape_distance(&f.shape, &center, tol, iso_cap)?.hi;
            worst = worst.max(d);
            if d >= ball.radius {
                rep.ball_ok = Some(false);
                fail(&mut rep, i, format!("frame {i} (t = {}) is at distance {d} from the center, radius {}", f.t, ball.radius));
            }
        }
        rep.max_center_distance = Some(worst);
    }
    rep.passed = rep.failure.is_none();
    Ok(rep)
}
