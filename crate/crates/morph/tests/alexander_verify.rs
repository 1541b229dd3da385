use frechet_core::{classify_path, continuous_frechet, ClassLabel, Point, Polyline, Shape, Tolerances, DEFAULT_ISO_CAP};
use frechet_morph::{embed_morph, immersion_morph, linear_morph, verify_morph, Ball, MorphContext};

fn path(s: &Shape) -> &Polyline {
    match s {
        Shape::Path(p) => p,
        Shape::Graph(_) => panic!("expected a path"),
    }
}

fn spiral() -> Polyline {
    let pts = (0..40)
        .map(|i| {
            let th = 0.3 * i as f64;
            let r = 0.2 + 0.08 * th;
            Point::new(vec![r * th.cos(), r * th.sin()]).unwrap()
        })
        .collect();
    Polyline::new(pts).unwrap()
}

fn s_curve() -> Polyline {
    let pts = (0..30)
        .map(|i| {
            let x = i as f64 / 29.0 * 4.0 - 2.0;
            Point::new(vec![x + 3.0, (1.5 * x).sin()]).unwrap()
        })
        .collect();
    Polyline::new(pts).unwrap()
}

#[test]
fn spiral_to_s_curve_stays_embedded() {
    let tol = Tolerances::default();
    let seq = embed_morph(&spiral(), &s_curve(), &MorphContext::with_frames(64)).unwrap();
    assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
    assert_eq!(seq.frames.len(), 64);
    for f in &seq.frames {
        assert_eq!(classify_path(path(&f.shape), &tol).class_label, ClassLabel::E, "t={}", f.t);
    }
    let rep = verify_morph(&seq, None, &tol, DEFAULT_ISO_CAP).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn quarter_frames_are_single_segments() {
    let seq = embed_morph(&spiral(), &s_curve(), &MorphContext::with_frames(64)).unwrap();
    for t in [0.25, 0.75] {
        let f = seq.frames.iter().find(|f| (f.t - t).abs() < 1e-12).expect("phase boundary is a frame");
        assert_eq!(path(&f.shape).len(), 2);
    }
}

#[test]
fn alexander_on_equal_inputs_returns_to_start() {
    let tol = Tolerances::default();
    let p = s_curve();
    let seq = embed_morph(&p, &p, &MorphContext::with_frames(9)).unwrap();
    for t in [0.0, 1.0] {
        let f = seq.frames.iter().find(|f| f.t == t).unwrap();
        assert!(continuous_frechet(path(&f.shape), &p, &tol).unwrap().hi <= 1e-6);
    }
    // the middle phases hold the final segment in place
    for f in seq.frames.iter().filter(|f| f.t > 0.25 && f.t < 0.75) {
        assert_eq!(path(&f.shape).len(), 2);
    }
}

#[test]
fn translate_morph_stays_in_ball_around_target() {
    let tol = Tolerances::default();
    let p = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]).unwrap();
    let q = p.map_points(|v| v.offset(&Point::new(vec![0.6, 0.8]).unwrap(), 0.5));
    let seq = linear_morph(&p, &q, &MorphContext::with_frames(5)).unwrap();
    let ball = Ball { center: Shape::Path(q), radius: seq.d0 + tol.eps_dist };
    let rep = verify_morph(&seq, Some(&ball), &tol, DEFAULT_ISO_CAP).unwrap();
    assert!(rep.passed, "{rep:?}");
}

#[test]
fn mutated_frame_is_caught() {
    let tol = Tolerances::default();
    let p = Polyline::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]).unwrap();
    let q = p.map_points(|v| v.offset(&Point::new(vec![0.0, 1.0]).unwrap(), 0.5));
    let mut seq = linear_morph(&p, &q, &MorphContext::with_frames(5)).unwrap();
    let ball = Ball { center: Shape::Path(q.clone()), radius: seq.d0 + tol.eps_dist };
    seq.frames[2].shape = Shape::Path(q.map_points(|v| v.offset(&Point::new(vec![1.0, 0.0]).unwrap(), 3.0)));
    let rep = verify_morph(&seq, Some(&ball), &tol, DEFAULT_ISO_CAP).unwrap();
    assert!(!rep.passed);
    assert_eq!(rep.ball_ok, Some(false));
    assert_eq!(rep.worst_frame, Some(2));
}

#[test]
fn immersion_morphs_verify() {
    let tol = Tolerances::default();
    let cases = [
        (vec![[0.0, 0.0], [1.0, 0.0]], vec![[1.0, 0.0], [0.0, 0.0]]),
        (vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.4]], vec![[0.0, 0.0], [1.0, 0.0], [0.3, -0.4]]),
        (vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]], vec![[0.0, 1.0], [1.0, 2.0], [2.0, 1.5]]),
    ];
    for (a, b) in cases {
        let p = Polyline::new(a.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect()).unwrap();
        let q = Polyline::new(b.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect()).unwrap();
        let seq = immersion_morph(&p, &q, &MorphContext::with_frames(32)).unwrap();
        let rep = verify_morph(&seq, None, &tol, DEFAULT_ISO_CAP).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
