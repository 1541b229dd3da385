use proptest::prelude::*;

use frechet_core::{classify_path, continuous_frechet, frechet_at_most, ClassLabel, Point, Polyline, Shape, Tolerances, DEFAULT_ISO_CAP};
use frechet_morph::{chain_morphs, immersion_morph, linear_morph, qtip_inflate, reroute_pauses, verify_morph, Ball, MorphContext};

fn curve(n: std::ops::Range<usize>) -> impl Strategy<Value = Polyline> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_map(|pts| Polyline::new(pts.into_iter().map(|(x, y)| Point::new(vec![x, y]).unwrap()).collect()).unwrap())
}

fn path(s: &Shape) -> &Polyline {
    match s {
        Shape::Path(p) => p,
        Shape::Graph(_) => unreachable!(),
    }
}

fn jitter(c: &Polyline, offsets: &[(f64, f64)]) -> Polyline {
    c.map_points(|v| v.clone()).vertices().iter().zip(offsets.iter().cycle()).map(|(v, (dx, dy))| v.add(&Point::new(vec![*dx, *dy]).unwrap())).collect::<Vec<_>>().pipe(|vs| Polyline::new(vs).unwrap())
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear_frames_contract_towards_target(p in curve(2..7), q in curve(2..7)) {
        let seq = linear_morph(&p, &q, &MorphContext::with_frames(9)).unwrap();
        // the reparameterized target is the last frame
        let q_prime = path(&seq.frames.last().unwrap().shape).clone();
        prop_assert!(continuous_frechet(&q_prime, &q, &Tolerances::default()).unwrap().lo <= 1e-9);
        for f in &seq.frames {
            let bound = (1.0 - f.t) * (seq.d0 + 2e-6);
            prop_assert!(frechet_at_most(path(&f.shape), &q_prime, bound).unwrap(), "t={}", f.t);
        }
    }

    #[test]
    fn linear_frames_move_at_bounded_speed(p in curve(2..6), q in curve(2..6)) {
        let seq = linear_morph(&p, &q, &MorphContext::with_frames(7)).unwrap();
        for a in &seq.frames {
            for b in &seq.frames {
                let bound = (a.t - b.t).abs() * seq.d0 + 2e-6;
                prop_assert!(frechet_at_most(path(&a.shape), path(&b.shape), bound).unwrap());
            }
        }
    }

    #[test]
    fn qtip_costs_at_most_its_radius(c in curve(3..7), k in 1usize..5, r in 0.001f64..0.2) {
        let k = 1 + k % (c.len() - 2);
        prop_assume!(c.vertices()[k].distance(&c.vertices()[k - 1]) > 1e-6);
        let out = qtip_inflate(&c, k, r).unwrap();
        prop_assert!(continuous_frechet(&c, &out, &Tolerances::default()).unwrap().lo <= r + 1e-9);
    }

    #[test]
    fn rerouting_is_free(c in curve(2..6), dup in 0usize..6) {
        let tol = Tolerances::default();
        let mut vs = c.vertices().to_vec();
        let i = dup % vs.len();
        vs.insert(i, vs[i].clone());
        prop_assume!(vs.iter().any(|v| v.distance(&vs[0]) > 1e-3));
        let paused = Polyline::new(vs).unwrap();
        let (clean, _) = reroute_pauses(&paused, &tol).unwrap();
        prop_assert!(frechet_core::detect_pauses(&clean, &tol).is_empty());
        prop_assert!(continuous_frechet(&paused, &clean, &tol).unwrap().lo <= tol.eps_dist);
    }

    #[test]
    fn immersion_morphs_stay_immersed(p in curve(2..6), q in curve(2..6)) {
        let tol = Tolerances::default();
        prop_assume!(classify_path(&p, &tol).class_label != ClassLabel::C && classify_path(&q, &tol).class_label != ClassLabel::C);
        let seq = immersion_morph(&p, &q, &MorphContext::with_frames(16)).unwrap();
        prop_assert!(seq.obstruction.is_none(), "{:?}", seq.obstruction);
        let rep = verify_morph(&seq, None, &tol, DEFAULT_ISO_CAP).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
    }

    #[test]
    fn ball_members_connect_inside_the_ball(
        p0 in curve(3..6),
        o1 in prop::collection::vec((-0.2f64..0.2, -0.2f64..0.2), 1..4),
        o2 in prop::collection::vec((-0.2f64..0.2, -0.2f64..0.2), 1..4),
    ) {
        let tol = Tolerances::default();
        let (p1, p2) = (jitter(&p0, &o1), jitter(&p0, &o2));
        for c in [&p0, &p1, &p2] {
            prop_assume!(classify_path(c, &tol).class_label != ClassLabel::C);
        }
        let d = continuous_frechet(&p1, &p0, &tol).unwrap().hi.max(continuous_frechet(&p2, &p0, &tol).unwrap().hi);
        prop_assume!(d > 1e-3);
        let ball = Ball { center: Shape::Path(p0.clone()), radius: 1.2 * d };
        let ctx = MorphContext { ball: Some(ball.clone()), ..MorphContext::with_frames(16) };
        let seq = chain_morphs(immersion_morph(&p1, &p0, &ctx).unwrap(), immersion_morph(&p0, &p2, &ctx).unwrap());
        let rep = verify_morph(&seq, Some(&ball), &tol, DEFAULT_ISO_CAP).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
    }
}
