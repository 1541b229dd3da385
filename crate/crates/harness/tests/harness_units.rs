use frechet_core::{continuous_frechet, Point, Polyline, Tolerances};
use frechet_harness::report::Check;
use frechet_harness::sample::{homeomorphism, sup_gap, trial_rng};
use frechet_harness::{Gallery, SuiteConfig, SuiteRegistry};

#[test]
fn registry_lists_every_suite() {
    let reg = SuiteRegistry::with_defaults();
    let mut names = reg.names();
    names.sort();
    assert_eq!(names, ["balls", "gallery", "graph", "immersion", "interpolation", "metric", "nonseparability", "sandwich"]);
    assert!(reg.get("nope").is_err());
}

#[test]
fn config_rejects_empty_runs() {
    assert!(SuiteConfig::new(0, 0, 2).validate().is_err());
    assert!(SuiteConfig::new(0, 1, 0).validate().is_err());
    assert!(SuiteConfig::new(0, 1, 2).with_vertices(4, 3).validate().is_err());
    assert!(SuiteConfig::new(0, 1, 2).validate().is_ok());
}

#[test]
fn report_json_has_the_documented_keys() {
    let reg = SuiteRegistry::with_defaults();
    let r = reg.run("metric", &SuiteConfig::new(7, 3, 2).with_vertices(3, 6), false).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["suite"], "metric");
    assert_eq!(v["seed"], 7);
    assert!(v["timing_ms"].is_null());
    for p in v["properties"].as_array().unwrap() {
        assert!(p["name"].is_string() && p["pass"].is_boolean());
    }
    let timed = reg.run("metric", &SuiteConfig::new(7, 3, 2).with_vertices(3, 6), true).unwrap();
    assert!(timed.timing_ms.is_some());
}

#[test]
fn failing_check_carries_its_witness() {
    let mut c = Check::at_most("x", 1.0);
    c.observe(0.5, || serde_json::json!({ "trial": 0 }));
    c.observe(3.0, || serde_json::json!({ "trial": 1 }));
    c.observe(2.0, || serde_json::json!({ "trial": 2 }));
    let r = c.finish();
    assert!(!r.pass);
    assert_eq!(r.worst, Some(3.0));
    assert_eq!(r.witness.unwrap()["trial"], 1);

    let mut ok = Check::at_least("y", 0.0);
    ok.observe(1.0, || serde_json::json!({}));
    let r = ok.finish();
    assert!(r.pass && r.witness.is_none());
}

#[test]
fn degenerate_triple_passes_the_axioms() {
    let tol = Tolerances::default();
    let p = Polyline::from_coords(&[&[0.5, 0.5]]).unwrap();
    let d = continuous_frechet(&p, &p, &tol).unwrap();
    assert!(d.hi <= tol.eps_dist);
    // with p = q = r the triangle slack is d(p,p) itself
    assert!(d.value() + d.value() - d.value() >= -3.0 * tol.eps_dist);
}

#[test]
fn seeds_change_the_samples_but_not_the_verdict() {
    let reg = SuiteRegistry::with_defaults();
    let a = reg.run("sandwich", &SuiteConfig::new(1, 10, 3), false).unwrap();
    let b = reg.run("sandwich", &SuiteConfig::new(2, 10, 3), false).unwrap();
    assert!(a.passed() && b.passed());
    assert_ne!(a.to_json(), b.to_json());
}

#[test]
fn homeomorphisms_are_increasing_bijections() {
    let mut rng = trial_rng(3, 0, 0);
    for _ in 0..20 {
        let h = homeomorphism(&mut rng, 5);
        assert_eq!(h.len(), 7);
        assert_eq!(h[0], (0.0, 0.0));
        assert_eq!(h[6], (1.0, 1.0));
        assert!(h.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1));
    }
}

#[test]
fn sup_gap_of_a_slowed_segment() {
    // p(u) = u and p(h(u)) with h(1/2) = 1/4: gap peaks at the breakpoint
    let p = Polyline::from_coords(&[&[0.0], &[1.0]]).unwrap();
    let q = p.compose(&[(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]).unwrap();
    assert!((sup_gap(&p, &q) - 0.25).abs() < 1e-15);
}

/// Start points must be matched; vertex-to-vertex straight matching is a
/// valid coupling when both curves have the same vertex count.
fn bracket(p: &Polyline, q: &Polyline) -> (f64, f64) {
    let lo = p.start().distance(q.start()).max(p.end().distance(q.end()));
    let hi = p.vertices().iter().zip(q.vertices()).map(|(a, b)| a.distance(b)).fold(0.0, f64::max);
    (lo, hi)
}

#[test]
fn gallery_distances_match_their_brackets() {
    let g = Gallery::load().unwrap();
    let tol = Tolerances::default();
    for s in [&g.g1, &g.g2, &g.g3] {
        let (lo, hi) = bracket(&s.p, &s.q);
        assert!((lo - hi).abs() < 1e-12, "bracket is not tight");
        assert!((s.distance - lo).abs() < 1e-12);
        let d = continuous_frechet(&s.p, &s.q, &tol).unwrap();
        assert!(d.lo <= lo + 1e-9 && d.hi >= lo - 1e-9, "{d:?} vs {lo}");
    }
}

#[test]
fn g3_tails_cross_with_the_stated_clearance() {
    let g3 = Gallery::load().unwrap().g3;
    let vs = g3.p.vertices();
    let first = (&vs[0], &vs[1]);
    let last = (&vs[5], &vs[6]);
    // the tails pass over the origin of the xy-plane, delta apart in z
    let z = |a: &Point| a.coords()[2];
    assert!((z(first.0) - z(last.0)).abs() - 0.1 < 1e-12);
    let tail = first.0.distance(first.1) / 2.0;
    assert!((tail - 0.2).abs() < 1e-12);
    let center = g3.center.unwrap();
    assert!(center.vertices().iter().all(|v| v.coords()[2] == 0.0));
}

#[test]
fn every_suite_passes_small_runs() {
    let reg = SuiteRegistry::with_defaults();
    for name in reg.names() {
        let base = reg.get(name).unwrap().defaults();
        let cfg = SuiteConfig { seed: 11, trials: 3, ..base };
        let r = reg.run(name, &cfg, false).unwrap();
        assert!(r.passed(), "{name}: {}", r.to_json());
    }
}
