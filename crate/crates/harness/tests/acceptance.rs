//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use frechet_harness::{SuiteConfig, SuiteRegistry, SuiteReport};

const SEED: u64 = 42;

struct Outcome {
    pass: bool,
    line: String,
}

fn summary(r: &SuiteReport) -> String {
    r.properties
        .iter()
        .map(|p| match p.worst {
            Some(w) => format!("{}={}{:.3e}", p.name, if p.pass { "" } else { "FAIL:" }, w),
            None => format!("{}={}", p.name, if p.pass { "ok" } else { "FAIL" }),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn run(reg: &SuiteRegistry, suite: &str, cfg: SuiteConfig) -> (SuiteReport, Duration) {
    let start = Instant::now();
    let r = reg.run(suite, &cfg, false).unwrap_or_else(|e| panic!("{suite}: {e}"));
    (r, start.elapsed())
}

fn criterion(n: usize, title: &str, reports: &[&SuiteReport], elapsed: Duration, limit_s: u64) -> Outcome {
    let ok = reports.iter().all(|r| r.passed());
    let in_time = elapsed.as_secs_f64() < limit_s as f64;
    let detail = reports.iter().map(|r| summary(r)).collect::<Vec<_>>().join(" | ");
    let pass = ok && in_time;
    let line = format!(
        "{} criterion {n} {title}: {detail} [{:.1} s, limit {limit_s} s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    Outcome { pass, line }
}

fn cfg(reg: &SuiteRegistry, suite: &str, trials: usize, dim: usize) -> SuiteConfig {
    let base = reg.get(suite).unwrap().defaults();
    SuiteConfig { seed: SEED, trials, dim, ..base }
}

fn main() {
    let reg = SuiteRegistry::with_defaults();
    let mut outcomes = Vec::new();
    let mut all: Vec<(String, SuiteConfig, SuiteReport)> = Vec::new();
    let mut keep = |name: &str, c: &SuiteConfig, r: &SuiteReport| all.push((name.to_string(), c.clone(), r.clone()));

    let c2 = cfg(&reg, "metric", 100, 2).with_vertices(5, 30);
    let c3 = cfg(&reg, "metric", 100, 3).with_vertices(5, 30);
    let (r2, t2) = run(&reg, "metric", c2.clone());
    let (r3, t3) = run(&reg, "metric", c3.clone());
    outcomes.push(criterion(1, "metric axioms (R^2, R^3)", &[&r2, &r3], t2 + t3, 60));
    keep("metric", &c2, &r2);
    keep("metric", &c3, &r3);

    let c = cfg(&reg, "nonseparability", 50, 2);
    let (r, t) = run(&reg, "nonseparability", c.clone());
    outcomes.push(criterion(2, "non-separability", &[&r], t, 30));
    keep("nonseparability", &c, &r);

    let c = cfg(&reg, "sandwich", 200, 2);
    let (r, t) = run(&reg, "sandwich", c.clone());
    outcomes.push(criterion(3, "oracle sandwich", &[&r], t, 60));
    keep("sandwich", &c, &r);

    let c = cfg(&reg, "interpolation", 50, 2);
    let (r, t) = run(&reg, "interpolation", c.clone());
    outcomes.push(criterion(4, "interpolation laws", &[&r], t, 60));
    keep("interpolation", &c, &r);

    let c = cfg(&reg, "immersion", 25, 2);
    let (r, t) = run(&reg, "immersion", c.clone());
    outcomes.push(criterion(5, "immersion morphs", &[&r], t, 120));
    keep("immersion", &c, &r);

    let c = cfg(&reg, "balls", 25, 2);
    let (r, t) = run(&reg, "balls", c.clone());
    outcomes.push(criterion(6, "ball connectivity", &[&r], t, 180));
    keep("balls", &c, &r);

    let c = cfg(&reg, "gallery", 1, 3);
    let (r, t) = run(&reg, "gallery", c.clone());
    outcomes.push(criterion(7, "gallery fixtures", &[&r], t, 60));
    keep("gallery", &c, &r);

    let c = cfg(&reg, "graph", 50, 2);
    let (r, t) = run(&reg, "graph", c.clone());
    outcomes.push(criterion(8, "graph engine", &[&r], t, 60));
    keep("graph", &c, &r);

    let mut differing = Vec::new();
    for (name, c, first) in &all {
        let (again, _) = run(&reg, name, c.clone());
        if again.to_json() != first.to_json() {
            differing.push(format!("{name}/dim{}", c.dim));
        }
    }
    let pass = differing.is_empty();
    outcomes.push(Outcome {
        pass,
        line: format!(
            "{} criterion 9 determinism: {} reports rerun, {}",
            if pass { "PASS" } else { "FAIL" },
            all.len(),
            if pass { "all byte-identical".to_string() } else { format!("differ: {}", differing.join(", ")) }
        ),
    });

    for o in &outcomes {
        println!("{}", o.line);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
