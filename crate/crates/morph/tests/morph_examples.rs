use std::collections::BTreeMap;

use frechet_core::{classify_path, continuous_frechet, ClassLabel, GraphMap, MultiGraph, Point, Polyline, Shape, Tolerances};
use frechet_morph::engine::{classify_shape, embedding_morph, graph_morph, immersion_morph, linear_morph, MorphContext};
use frechet_morph::{EventKind, Maneuver};

fn pl(rows: &[&[f64]]) -> Polyline {
    Polyline::from_coords(rows).unwrap()
}

fn path(s: &Shape) -> &Polyline {
    match s {
        Shape::Path(p) => p,
        Shape::Graph(_) => panic!("expected a path"),
    }
}

fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

#[test]
fn translates_move_rigidly() {
    let tol = Tolerances::default();
    let p = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]);
    let q = p.map_points(|v| v.add(&pt(&[0.3, 0.4])));
    let seq = linear_morph(&p, &q, &MorphContext::with_frames(5)).unwrap();
    assert_eq!(seq.frames.len(), 5);
    assert!((seq.d0 - 0.5).abs() < 1e-12);
    for f in &seq.frames {
        let d = continuous_frechet(path(&f.shape), &q, &tol).unwrap();
        assert!((d.value() - (1.0 - f.t) * 0.5).abs() <= 1e-6, "t={} d={d:?}", f.t);
    }
    assert!(seq.events.is_empty());
}

#[test]
fn reversed_segment_collapses_in_the_middle() {
    let p = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let seq = linear_morph(&p, &p.reverse(), &MorphContext::with_frames(5)).unwrap();
    let mid = path(&seq.frames[2].shape);
    assert!(mid.vertices().iter().all(|v| v.distance(mid.start()) == 0.0));
    assert!(seq.events.iter().any(|e| e.kind == EventKind::SingletonCollapse && (e.t - 0.5).abs() < 1e-12));
    assert!(seq.obstruction.is_none());
}

#[test]
fn identical_inputs_stay_put() {
    let tol = Tolerances::default();
    let p = pl(&[&[0.0, 0.0], &[1.0, 2.0], &[3.0, 1.0]]);
    let seq = linear_morph(&p, &p, &MorphContext::with_frames(7)).unwrap();
    for f in &seq.frames {
        assert!(continuous_frechet(path(&f.shape), &p, &tol).unwrap().hi <= 1e-6);
    }
}

#[test]
fn generic_immersion_morph_is_linear() {
    let p = pl(&[&[0.0, 0.0], &[1.0, 0.2], &[2.0, 1.0]]);
    let q = pl(&[&[0.1, 0.5], &[1.2, 0.9], &[2.2, 2.0]]);
    let ctx = MorphContext::with_frames(9);
    let a = immersion_morph(&p, &q, &ctx).unwrap();
    let b = linear_morph(&p, &q, &ctx).unwrap();
    assert!(a.events.is_empty());
    assert_eq!(a.frames, b.frames);
}

#[test]
fn collinear_reversal_is_dodged_in_the_plane() {
    let tol = Tolerances::default();
    let p = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let q = p.reverse();
    let seq = immersion_morph(&p, &q, &MorphContext::with_frames(16)).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    assert!(seq.events.iter().any(|e| e.maneuver_applied == Maneuver::RotatePi));
    for f in &seq.frames {
        let c = path(&f.shape);
        assert!(classify_path(c, &tol).class_label.satisfies(ClassLabel::I), "t={}", f.t);
        assert!(c.diameter() > 0.0);
        // rotation stays within the straight-line distance to the target
        assert!(continuous_frechet(c, &q, &tol).unwrap().lo <= 1.0 + 1e-6);
    }
}

#[test]
fn reversal_on_the_line_is_obstructed() {
    let p = pl(&[&[0.0], &[1.0]]);
    let seq = immersion_morph(&p, &p.reverse(), &MorphContext::with_frames(8)).unwrap();
    let o = seq.obstruction.expect("no rotation in one dimension");
    assert_eq!(o.kind, EventKind::SingletonCollapse);
    assert!((o.t - 0.5).abs() < 1e-9);
    assert!(seq.frames.iter().all(|f| f.t <= o.t));
}

#[test]
fn forced_backtrack_gets_a_qtip() {
    let tol = Tolerances::default();
    let p = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[0.3, 0.4]]);
    let q = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[0.3, -0.4]]);
    let seq = immersion_morph(&p, &q, &MorphContext::with_frames(16)).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    let ev: Vec<_> = seq.events.iter().filter(|e| e.maneuver_applied == Maneuver::Qtip).collect();
    assert_eq!(ev.len(), 1);
    assert!((ev[0].t - 0.5).abs() < 1e-9);
    for f in &seq.frames {
        assert!(classify_path(path(&f.shape), &tol).class_label.satisfies(ClassLabel::I), "t={}", f.t);
    }
}

fn g3_pair() -> (Polyline, Polyline) {
    let p = pl(&[
        &[-0.2, 0.0, 0.05],
        &[0.2, 0.0, 0.05],
        &[0.6, 0.0, 0.0],
        &[0.6, 0.6, 0.0],
        &[0.0, 0.6, 0.0],
        &[0.0, 0.2, -0.05],
        &[0.0, -0.2, -0.05],
    ]);
    let q = p.map_points(|v| pt(&[v.coords()[0], v.coords()[1], -v.coords()[2]]));
    (p, q)
}

#[test]
fn mirrored_loops_cross_in_three_dimensions() {
    let (p, q) = g3_pair();
    let seq = embedding_morph(&p, &q, &MorphContext::with_frames(32)).unwrap();
    let o = seq.obstruction.expect("crossing cannot be avoided in R^3 by a linear family");
    assert_eq!(o.kind, EventKind::SelfCross);
    assert!((o.t - 0.5).abs() < 1e-6);
}

#[test]
fn mirrored_loops_pass_in_four_dimensions() {
    let tol = Tolerances::default();
    let (p, q) = g3_pair();
    let ctx = MorphContext { bump: Some(0.04), lift_to_4d: true, ..MorphContext::with_frames(32) };
    let seq = embedding_morph(&p, &q, &ctx).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    assert!(seq.events.iter().any(|e| e.maneuver_applied == Maneuver::Lift4d && e.kind == EventKind::SelfCross && e.t > 0.0));
    let plain = linear_morph(&p.extended(4), &q.extended(4), &ctx).unwrap();
    for f in &seq.frames {
        let c = path(&f.shape);
        assert_eq!(classify_path(c, &tol).class_label, ClassLabel::E, "t={}", f.t);
        // compare with the unlifted frame at the same time
        if let Some(g) = plain.frames.iter().find(|g| (g.t - f.t).abs() < 1e-12) {
            assert!(continuous_frechet(c, path(&g.shape), &tol).unwrap().lo <= 0.04 + 1e-6);
        }
    }
}

fn theta(shift: &[f64]) -> GraphMap {
    let g = MultiGraph::from_pairs(&["a", "b", "m1", "m2", "m3"], &[("a", "m1"), ("m1", "b"), ("a", "m2"), ("m2", "b"), ("a", "m3"), ("m3", "b")]).unwrap();
    let base = [("a", [0.0, 0.0]), ("b", [2.0, 0.0]), ("m1", [1.0, 1.0]), ("m2", [1.0, 0.0]), ("m3", [1.0, -1.0])];
    let vp: BTreeMap<String, Point> = base.iter().map(|(n, c)| (n.to_string(), pt(&[c[0] + shift[0], c[1] + shift[1]]))).collect();
    GraphMap::straight(g, vp).unwrap()
}

#[test]
fn theta_translate_morphs_through_embeddings() {
    let tol = Tolerances::default();
    let seq = graph_morph(&theta(&[0.0, 0.0]), &theta(&[0.3, 0.1]), ClassLabel::E, &MorphContext::with_frames(9)).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    assert!(seq.events.is_empty(), "{:?}", seq.events);
    for f in &seq.frames {
        assert_eq!(classify_shape(&f.shape, &tol).class_label, ClassLabel::E);
    }
}

fn wedge(z: f64) -> GraphMap {
    let g = MultiGraph::from_pairs(&["o", "a1", "a2", "b1", "b2"], &[("o", "a1"), ("a1", "a2"), ("a2", "o"), ("o", "b1"), ("b1", "b2"), ("b2", "o")]).unwrap();
    let mut vp = BTreeMap::new();
    vp.insert("o".to_string(), pt(&[0.0, 0.0, 0.0, 0.0]));
    vp.insert("a1".to_string(), pt(&[2.0, -1.0, 0.0, 0.0]));
    vp.insert("a2".to_string(), pt(&[2.0, 1.0, 0.0, 0.0]));
    vp.insert("b1".to_string(), pt(&[1.5, -1.5, z, 0.0]));
    vp.insert("b2".to_string(), pt(&[1.5, 1.5, z, 0.0]));
    GraphMap::straight(g, vp).unwrap()
}

#[test]
fn wedge_crossing_is_lifted() {
    let tol = Tolerances::default();
    let seq = graph_morph(&wedge(0.3), &wedge(-0.3), ClassLabel::E, &MorphContext::with_frames(16)).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    assert!(seq.events.iter().any(|e| e.maneuver_applied == Maneuver::Lift4d));
    for f in &seq.frames {
        assert_eq!(classify_shape(&f.shape, &tol).class_label, ClassLabel::E, "t={}", f.t);
    }
}
