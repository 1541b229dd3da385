//! Morph construction: a linear family, maneuvers installed at the detected
//! event times, and sampled frames checked against the target class.

use frechet_core::point::perpendicular;
use frechet_core::{
    classify_graph_map, classify_path, continuous_frechet, graph_frechet, ClassLabel, ClassReport, Enclosure, GraphMap, Point, Polyline,
    Shape, Tolerances, DEFAULT_ISO_CAP,
};

use crate::error::MorphError;
use crate::events::{backtrack_roots, collapse_times, crossing_roots, singleton_time};
use crate::family::{no_maneuver, Edit, Family, Layout, Strand};
use crate::maneuvers::{half_turn_planes, orthogonal_axis};
use crate::sequence::{EventKind, Frame, Location, Maneuver, MorphEvent, MorphSequence, Obstruction};

/// A ball in curve space that every frame must stay strictly inside.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Shape,
    pub radius: f64,
}

#[derive(Clone, Debug)]
pub struct MorphContext {
    pub tol: Tolerances,
    /// Number of uniformly spaced frames; event frames come on top.
    pub frames: usize,
    pub ball: Option<Ball>,
    /// Fixed lift height for crossings; defaults to half the slack.
    pub bump: Option<f64>,
    pub iso_cap: usize,
    /// Zero-extend inputs below dimension 4 before an embedding morph.
    pub lift_to_4d: bool,
}

impl Default for MorphContext {
    fn default() -> Self {
        Self { tol: Tolerances::default(), frames: 64, ball: None, bump: None, iso_cap: DEFAULT_ISO_CAP, lift_to_4d: false }
    }
}

impl MorphContext {
    pub fn with_frames(frames: usize) -> Self {
        Self { frames, ..Self::default() }
    }
}

/// Oriented path distance for paths, graph distance otherwise.
pub fn shape_distance(a: &Shape, b: &Shape, tol: &Tolerances, iso_cap: usize) -> Result<Enclosure, MorphError> {
    match (a, b) {
        (Shape::Path(p), Shape::Path(q)) => Ok(continuous_frechet(p, q, tol)?),
        _ => Ok(graph_frechet(&a.as_graph(), &b.as_graph(), tol, iso_cap)?.enclosure),
    }
}

pub fn classify_shape(s: &Shape, tol: &Tolerances) -> ClassReport {
    match s {
        Shape::Path(p) => classify_path(p, tol),
        Shape::Graph(g) => classify_graph_map(g, tol),
    }
}

/// Zero-extends a shape to `dim` coordinates (no-op when already there).
pub fn extend_shape(s: &Shape, dim: usize) -> Shape {
    if s.dim() >= dim {
        return s.clone();
    }
    match s {
        Shape::Path(p) => Shape::Path(p.extended(dim)),
        Shape::Graph(g) => Shape::Graph(g.map_points(|v| v.extended(dim))),
    }
}

#[derive(Default)]
struct Plan {
    events: Vec<MorphEvent>,
    obstruction: Option<Obstruction>,
    times: Vec<f64>,
}

impl Plan {
    fn obstruct(&mut self, constraint: &str, t: f64, margin: f64, kind: EventKind, detail: String) {
        if self.obstruction.as_ref().is_none_or(|o| t < o.t) {
            self.obstruction = Some(Obstruction { constraint: constraint.into(), t, margin, kind, detail });
        }
    }
}

/// Room left at time `t` before a maneuver would push the frame out of the
/// ball (or, without a ball, away from the straight-line schedule).
fn slack_at(f: &Family, t: f64, ctx: &MorphContext) -> Result<f64, MorphError> {
    match &ctx.ball {
        Some(b) => {
            let (shape, _) = f.frame(t, false, &ctx.tol)?;
            let d = shape_distance(&shape, &extend_shape(&b.center, f.dim), &ctx.tol, ctx.iso_cap)?;
            Ok(b.radius - d.hi)
        }
        None => Ok(f.d0() * t.min(1.0 - t)),
    }
}

fn location(f: &Family, strand: usize, vertex: usize) -> Location {
    match f.layout {
        Layout::Path => Location::Param(f.strands[strand].params[vertex]),
        Layout::Graph { .. } => Location::Id(format!("{}#{vertex}", f.strands[strand].id)),
    }
}

fn in_dodge(f: &Family, t: f64) -> bool {
    f.edits.iter().any(|e| matches!(e, Edit::Dodge { t0, w, .. } if (t - t0).abs() <= *w))
}

/// Lift height: the requested bump, or a default bounded by slack and local scale.
fn lift_height(ctx: &MorphContext, slack: f64, scale: f64) -> Result<f64, MorphError> {
    match ctx.bump {
        Some(b) => {
            if ctx.ball.is_some() && b > slack {
                return Err(MorphError::BumpTooLarge { bump: b, slack });
            }
            Ok(b)
        }
        None => Ok((0.5 * slack).min(0.25 * scale)),
    }
}

fn plan_singleton(f: &mut Family, ctx: &MorphContext, dt: f64, plan: &mut Plan) -> Result<(), MorphError> {
    let Some((ts, c)) = singleton_time(f, ctx.tol.eps_dist) else { return Ok(()) };
    plan.times.push(ts);
    let s = &f.strands[0];
    let dirs: Vec<Point> = s.p.iter().zip(&s.q).map(|(a, b)| b.sub(a)).filter(|d| d.norm() > ctx.tol.eps_dist).collect();
    let planes = if f.dim >= 2 { half_turn_planes(&dirs, f.dim) } else { None };
    let Some(planes) = planes else {
        plan.obstruct(
            "dimension",
            ts,
            0.0,
            EventKind::SingletonCollapse,
            format!("the frame collapses to a point and there is no spare dimension to rotate through (dim {})", f.dim),
        );
        return Ok(());
    };
    let slack = slack_at(f, ts, ctx)?;
    if slack <= 0.0 {
        plan.obstruct("ball", ts, -slack, EventKind::SingletonCollapse, "no slack left for the rotation".into());
        return Ok(());
    }
    let vmax = f.d0();
    let w = (0.5 * dt).min(slack / (2.0 * vmax)).min(ts).min(1.0 - ts);
    f.edits.push(Edit::Dodge { center: c, t0: ts, w, planes });
    plan.times.extend([ts - w, ts + w]);
    plan.events.push(MorphEvent {
        t: ts,
        kind: EventKind::SingletonCollapse,
        maneuver_applied: Maneuver::RotatePi,
        location: Location::Id(f.strands[0].id.clone()),
        magnitude: w * vmax,
        window: w,
    });
    Ok(())
}

/// Smallest Q-tip radius, in units of the distance tolerance, so that the
/// loop stays resolvable by classification.
const QTIP_FLOOR: f64 = 1e3;

/// Half-width of a window around `t0` on which the corner at vertex `k`
/// stays sharper than a right angle and the incoming direction turns by
/// less than 60 degrees. A Q-tip active on this window cannot create a
/// new reversal.
fn sharp_window(s: &Strand, k: usize, t0: f64, wmax: f64) -> f64 {
    let (ap, aq) = (s.p[k].sub(&s.p[k - 1]), s.q[k].sub(&s.q[k - 1]));
    let (bp, bq) = (s.p[k + 1].sub(&s.p[k]), s.q[k + 1].sub(&s.q[k]));
    let (da, db) = (aq.sub(&ap), bq.sub(&bp));
    // a(t)·b(t) = c0 + c1 t + c2 t²
    let c0 = ap.dot(&bp);
    let c1 = ap.dot(&db) + da.dot(&bp);
    let c2 = da.dot(&db);
    let mut roots = Vec::new();
    if c2.abs() > 1e-300 {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            roots.push((-c1 - disc.sqrt()) / (2.0 * c2));
            roots.push((-c1 + disc.sqrt()) / (2.0 * c2));
        }
    } else if c1.abs() > 1e-300 {
        roots.push(-c0 / c1);
    }
    let mut w = roots.iter().map(|r| 0.9 * (r - t0).abs()).fold(wmax, f64::min);
    let a_at = |t: f64| ap.lerp(&aq, t).normalized();
    let a0 = a_at(t0);
    for _ in 0..40 {
        let ok = (0..=32).all(|i| {
            let t = t0 - w + 2.0 * w * i as f64 / 32.0;
            match (&a0, a_at(t)) {
                (Some(x), Some(y)) => x.dot(&y) > 0.5,
                _ => false,
            }
        });
        if ok {
            break;
        }
        w *= 0.5;
    }
    w
}

fn plan_backtracks(f: &mut Family, target: ClassLabel, ctx: &MorphContext, dt: f64, plan: &mut Plan) -> Result<(), MorphError> {
    for r in backtrack_roots(f, ctx.tol.eps_dist) {
        if in_dodge(f, r.t) {
            continue;
        }
        plan.times.push(r.t);
        let vs = f.strands[r.strand].at(r.t);
        let k = r.index;
        let (a, b) = (vs[k].sub(&vs[k - 1]), vs[k + 1].sub(&vs[k]));
        let loc = location(f, r.strand, k);
        let slack = slack_at(f, r.t, ctx)?;
        if slack <= 0.0 {
            plan.obstruct("ball", r.t, -slack, EventKind::Backtrack, "no slack left for the maneuver".into());
            continue;
        }
        let scale = a.norm().min(b.norm());
        let w = 0.5 * dt;
        if target == ClassLabel::I {
            let Some(normal) = perpendicular(&a) else {
                plan.obstruct("dimension", r.t, 0.0, EventKind::Backtrack, "a Q-tip needs a perpendicular direction".into());
                continue;
            };
            let w = sharp_window(&f.strands[r.strand], k, r.t, w);
            plan.times.extend([r.t - w, r.t + w]);
            let radius = (0.5 * slack).min((0.25 * scale).max(QTIP_FLOOR * ctx.tol.eps_dist));
            f.edits.push(Edit::Qtip { strand: r.strand, vertex: k, t0: r.t, w, radius, normal });
            plan.events.push(MorphEvent { t: r.t, kind: EventKind::Backtrack, maneuver_applied: Maneuver::Qtip, location: loc, magnitude: radius, window: w });
        } else {
            if f.dim < 3 {
                plan.obstruct(
                    "dimension",
                    r.t,
                    0.0,
                    EventKind::Backtrack,
                    "an embedded frame cannot fold back in the plane; a loop would cross itself".into(),
                );
                continue;
            }
            let Some(dir) = orthogonal_axis(std::slice::from_ref(&a), f.dim) else { continue };
            let height = lift_height(ctx, slack, scale)?;
            f.edits.push(Edit::Lift { strand: r.strand, vertices: vec![k], t0: r.t, w, height, dir });
            plan.events.push(MorphEvent { t: r.t, kind: EventKind::Backtrack, maneuver_applied: Maneuver::Lift4d, location: loc, magnitude: height, window: w });
        }
    }
    Ok(())
}

fn plan_crossings(f: &mut Family, ctx: &MorphContext, dt: f64, plan: &mut Plan) -> Result<(), MorphError> {
    let graph = matches!(f.layout, Layout::Graph { .. });
    for r in crossing_roots(f, ctx.tol.eps_dist) {
        if in_dodge(f, r.t) {
            continue;
        }
        plan.times.push(r.t);
        if f.dim < 4 {
            plan.obstruct(
                "dimension",
                r.t,
                0.0,
                EventKind::SelfCross,
                format!("two segments pass through each other in dimension {}; resolving it needs a fourth coordinate", f.dim),
            );
            continue;
        }
        let mut choice = None;
        for (s, i) in std::iter::once((r.strand, r.index)).chain(r.other) {
            let last = f.strands[s].p.len() - 1;
            let verts: Vec<usize> = [i, i + 1].into_iter().filter(|&v| !graph || (v != 0 && v != last)).collect();
            if !verts.is_empty() {
                choice = Some((s, verts));
                break;
            }
        }
        let Some((s, verts)) = choice else {
            plan.obstruct("class", r.t, 0.0, EventKind::SelfCross, "crossing edges have no interior vertex to lift".into());
            continue;
        };
        let Some(dir) = orthogonal_axis(&r.avoid, f.dim) else {
            plan.obstruct("dimension", r.t, 0.0, EventKind::SelfCross, "no direction orthogonal to the crossing".into());
            continue;
        };
        let slack = slack_at(f, r.t, ctx)?;
        if slack <= 0.0 {
            plan.obstruct("ball", r.t, -slack, EventKind::SelfCross, "no slack left for the lift".into());
            continue;
        }
        let vs = f.strands[s].at(r.t);
        let scale = (1..vs.len()).map(|k| vs[k].distance(&vs[k - 1])).filter(|l| *l > 0.0).fold(f64::INFINITY, f64::min);
        let height = lift_height(ctx, slack, scale)?;
        let loc = location(f, s, verts[0]);
        f.edits.push(Edit::Lift { strand: s, vertices: verts, t0: r.t, w: 0.5 * dt, height, dir });
        plan.events.push(MorphEvent {
            t: r.t,
            kind: EventKind::SelfCross,
            maneuver_applied: Maneuver::Lift4d,
            location: loc,
            magnitude: height,
            window: 0.5 * dt,
        });
    }
    Ok(())
}

fn failure(report: &ClassReport) -> (EventKind, String) {
    if let Some(v) = report.vertex_violations.first() {
        (EventKind::VertexViolation, format!("vertex {v} is not locally injective"))
    } else if let Some(&(a, b)) = report.pauses.first() {
        (EventKind::Pause, format!("frame pauses on [{a}, {b}]"))
    } else if let Some(u) = report.backtracks.first() {
        (EventKind::Backtrack, format!("frame backtracks at parameter {u}"))
    } else if let Some(c) = report.self_contacts.first() {
        (EventKind::SelfCross, format!("frame touches itself at parameters {} and {}", c.params.0, c.params.1))
    } else {
        (EventKind::Pause, "frame fails its class".into())
    }
}

/// Events visible in an unmaneuvered frame, logged without a maneuver.
fn observed_events(f: &Family, t: f64, shape: &Shape, report: &ClassReport) -> Vec<MorphEvent> {
    let mut out = Vec::new();
    if let Shape::Path(p) = shape {
        if p.vertices().iter().all(|v| v.distance(p.start()) == 0.0) {
            out.push(no_maneuver(t, EventKind::SingletonCollapse, Location::Id(f.strands[0].id.clone())));
            return out;
        }
    }
    for &(a, b) in &report.pauses {
        let kind = if a <= 0.0 || b >= 1.0 { EventKind::EndpointPause } else { EventKind::Pause };
        out.push(no_maneuver(t, kind, Location::Param(a)));
    }
    for &u in &report.backtracks {
        out.push(no_maneuver(t, EventKind::Backtrack, Location::Param(u)));
    }
    out
}

/// Samples a family into a morph sequence aimed at `target`, installing
/// maneuvers for every event the target class forbids.
pub fn morph_family(mut f: Family, target: ClassLabel, strategy: &str, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    if ctx.frames < 2 {
        return Err(MorphError::TooFewFrames(ctx.frames));
    }
    let dt = 1.0 / (ctx.frames - 1) as f64;
    let mut plan = Plan::default();
    if target != ClassLabel::C {
        plan_singleton(&mut f, ctx, dt, &mut plan)?;
        plan_backtracks(&mut f, target, ctx, dt, &mut plan)?;
        if target == ClassLabel::E {
            plan_crossings(&mut f, ctx, dt, &mut plan)?;
        }
        plan.times.extend(collapse_times(&f, ctx.tol.eps_dist).into_iter().map(|c| c.0));
    }
    let mut ts: Vec<f64> = (0..ctx.frames).map(|i| i as f64 * dt).collect();
    *ts.last_mut().unwrap() = 1.0;
    ts.extend(plan.times.iter().copied().filter(|t| *t > 0.0 && *t < 1.0));
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    let center = ctx.ball.as_ref().map(|b| (extend_shape(&b.center, f.dim), b.radius));
    let clean = target != ClassLabel::C;
    let mut events = plan.events;
    let mut obstruction = plan.obstruction;
    let mut frames: Vec<Frame> = Vec::with_capacity(ts.len());
    for &t in &ts {
        if obstruction.as_ref().is_some_and(|o| t > o.t + 1e-12) {
            break;
        }
        let (shape, evs) = f.frame(t, clean, &ctx.tol)?;
        let report = classify_shape(&shape, &ctx.tol);
        if clean {
            events.extend(evs);
        } else {
            events.extend(observed_events(&f, t, &shape, &report));
        }
        let earlier = |o: &Option<Obstruction>| o.as_ref().is_none_or(|o| t < o.t);
        if !report.class_label.satisfies(target) && earlier(&obstruction) {
            let (kind, detail) = failure(&report);
            events.push(no_maneuver(t, kind, Location::Id(format!("frame@{t}"))));
            obstruction = Some(Obstruction { constraint: "class".into(), t, margin: 0.0, kind, detail });
        }
        if let Some((c, radius)) = &center {
            let d = shape_distance(&shape, c, &ctx.tol, ctx.iso_cap)?;
            if d.hi >= *radius && earlier(&obstruction) {
                obstruction = Some(Obstruction {
                    constraint: "ball".into(),
                    t,
                    margin: d.hi - radius,
                    kind: EventKind::SelfCross,
                    detail: format!("frame distance {} reaches the radius {radius}", d.hi),
                });
            }
        }
        frames.push(Frame { t, shape });
    }
    let step_bounds = frames.windows(2).map(|w| f.max_displacement(w[0].t, w[1].t)).collect();
    events.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    Ok(MorphSequence { strategy: strategy.into(), target_class: target, frames, events, step_bounds, d0: f.d0(), obstruction })
}

fn require_class(inputs: &[&Shape], needed: ClassLabel, tol: &Tolerances) -> Result<(), MorphError> {
    for s in inputs {
        let found = classify_shape(s, tol).class_label;
        if !found.satisfies(needed) {
            return Err(MorphError::InputClass { found: found.to_string(), needed: needed.to_string() });
        }
    }
    Ok(())
}

/// Straight-line interpolation on the common reparameterization; events are
/// logged but nothing is repaired.
pub fn linear_morph(p: &Polyline, q: &Polyline, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    let (f, _) = Family::path(p, q, &ctx.tol)?;
    morph_family(f, ClassLabel::C, "linear", ctx)
}

/// Interpolation through immersions: pauses rerouted, collapses dodged,
/// backtracks capped with Q-tips.
pub fn immersion_morph(p: &Polyline, q: &Polyline, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    require_class(&[&Shape::Path(p.clone()), &Shape::Path(q.clone())], ClassLabel::I, &ctx.tol)?;
    let (f, _) = Family::path(p, q, &ctx.tol)?;
    morph_family(f, ClassLabel::I, "immersion", ctx)
}

fn zero_extend_event() -> MorphEvent {
    MorphEvent {
        t: 0.0,
        kind: EventKind::SelfCross,
        maneuver_applied: Maneuver::Lift4d,
        location: Location::Id("zero_extend_to_4d".into()),
        magnitude: 0.0,
        window: 0.0,
    }
}

/// Interpolation through embeddings: crossings are lifted into a spare
/// coordinate (dimension 4 and up), otherwise reported as obstructions.
pub fn embedding_morph(p: &Polyline, q: &Polyline, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    require_class(&[&Shape::Path(p.clone()), &Shape::Path(q.clone())], ClassLabel::E, &ctx.tol)?;
    let lift = ctx.lift_to_4d && p.dim() < 4;
    let (p, q) = if lift { (p.extended(4), q.extended(4)) } else { (p.clone(), q.clone()) };
    let (f, _) = Family::path(&p, &q, &ctx.tol)?;
    let mut seq = morph_family(f, ClassLabel::E, "embedding", ctx)?;
    if lift {
        seq.events.insert(0, zero_extend_event());
    }
    Ok(seq)
}

/// Morph between homeomorphic graph-maps over the distance-minimizing pairing.
pub fn graph_morph(a: &GraphMap, b: &GraphMap, target: ClassLabel, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
    require_class(&[&Shape::Graph(a.clone()), &Shape::Graph(b.clone())], target, &ctx.tol)?;
    let lift = target == ClassLabel::E && ctx.lift_to_4d && a.dim() < 4;
    let (a, b) = if lift { (a.map_points(|v| v.extended(4)), b.map_points(|v| v.extended(4))) } else { (a.clone(), b.clone()) };
    let (f, _) = Family::graph(&a, &b, &ctx.tol, ctx.iso_cap)?;
    let mut seq = morph_family(f, target, "graph", ctx)?;
    if lift {
        seq.events.insert(0, zero_extend_event());
    }
    Ok(seq)
}

/// Runs `second` after `first`, each on half of the time axis. The shared
/// middle shape appears once.
pub fn chain_morphs(first: MorphSequence, second: MorphSequence) -> MorphSequence {
    let half = |t: f64| 0.5 * t;
    let late = |t: f64| 0.5 + 0.5 * t;
    let scale_events = |evs: Vec<MorphEvent>, g: &dyn Fn(f64) -> f64| {
        evs.into_iter().map(move |e| MorphEvent { t: g(e.t), window: 0.5 * e.window, ..e }).collect::<Vec<_>>()
    };
    let d0 = first.d0.max(second.d0);
    let mut frames: Vec<Frame> = first.frames.into_iter().map(|f| Frame { t: half(f.t), ..f }).collect();
    let mut events = scale_events(first.events, &half);
    let mut step_bounds = first.step_bounds;
    if let Some(o) = first.obstruction {
        return MorphSequence {
            strategy: first.strategy,
            target_class: first.target_class,
            frames,
            events,
            step_bounds,
            d0,
            obstruction: Some(Obstruction { t: half(o.t), ..o }),
        };
    }
    frames.extend(second.frames.into_iter().skip(1).map(|f| Frame { t: late(f.t), ..f }));
    events.extend(scale_events(second.events, &late));
    step_bounds.extend(second.step_bounds);
    MorphSequence {
        strategy: first.strategy,
        target_class: first.target_class.max(second.target_class),
        frames,
        events,
        step_bounds,
        d0,
        obstruction: second.obstruction.map(|o| Obstruction { t: late(o.t), ..o }),
    }
}
