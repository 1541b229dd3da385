//! Seeded sampling of curves and reparameterizations.

use frechet_core::{Point, Polyline, Shape};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::SuiteConfig;

/// Independent stream for one trial, so trials can run in any order.
pub fn trial_rng(seed: u64, stream: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream.wrapping_mul(1 << 20).wrapping_add(trial as u64));
    rng
}

pub fn point(rng: &mut impl Rng, dim: usize, scale: f64) -> Point {
    Point::new((0..dim).map(|_| rng.gen_range(0.0..scale)).collect()).expect("finite coordinates")
}

pub fn vertex_count(rng: &mut impl Rng, cfg: &SuiteConfig) -> usize {
    rng.gen_range(cfg.vertices.0..=cfg.vertices.1)
}

/// Uniform vertices in the `[0, scale]` cube; consecutive repeats are redrawn.
pub fn curve(rng: &mut impl Rng, dim: usize, n: usize, scale: f64) -> Polyline {
    let mut vs: Vec<Point> = Vec::with_capacity(n);
    while vs.len() < n {
        let p = point(rng, dim, scale);
        if vs.last().is_none_or(|l| l.distance(&p) > 1e-3 * scale) {
            vs.push(p);
        }
    }
    Polyline::new(vs).expect("distinct consecutive vertices")
}

/// Curve whose first coordinate increases while the others alternate.
pub fn zigzag(rng: &mut impl Rng, dim: usize, n: usize, scale: f64) -> Polyline {
    let vs = (0..n)
        .map(|i| {
            let x = scale * i as f64 / (n - 1) as f64;
            let mut c = vec![x];
            for _ in 1..dim {
                let hi = if i % 2 == 0 { 0.3 * scale } else { scale };
                let lo = if i % 2 == 0 { 0.0 } else { 0.7 * scale };
                c.push(rng.gen_range(lo..hi));
            }
            Point::new(c).expect("finite coordinates")
        })
        .collect();
    Polyline::new(vs).expect("distinct vertices")
}

/// Random increasing piecewise-linear bijection of `[0,1]` with `k` interior breakpoints.
pub fn homeomorphism(rng: &mut impl Rng, k: usize) -> Vec<(f64, f64)> {
    let draw = |rng: &mut dyn rand::RngCore| {
        let mut v: Vec<f64> = (0..k).map(|_| rng.gen_range(0.02..0.98)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    };
    loop {
        let xs = draw(rng);
        let ys = draw(rng);
        let all = |v: &[f64]| v.windows(2).all(|w| w[1] - w[0] > 1e-3);
        if all(&xs) && all(&ys) {
            let mut h = vec![(0.0, 0.0)];
            h.extend(xs.into_iter().zip(ys));
            h.push((1.0, 1.0));
            return h;
        }
    }
}

/// Largest pointwise gap `sup_u |a(u) - b(u)|`: exact over the union of both
/// parameter grids, since the gap is convex between breakpoints.
pub fn sup_gap(a: &Polyline, b: &Polyline) -> f64 {
    a.params().iter().chain(b.params()).map(|&u| a.eval(u).distance(&b.eval(u))).fold(0.0, f64::max)
}

/// Planar rotation by `angle` followed by a translation.
pub fn rigid_2d(c: &Polyline, angle: f64, shift: (f64, f64)) -> Polyline {
    let (s, co) = angle.sin_cos();
    c.map_points(|v| {
        let (x, y) = (v.coords()[0], v.coords()[1]);
        Point::new(vec![co * x - s * y + shift.0, s * x + co * y + shift.1]).expect("finite")
    })
}

/// Witness payload: enough to rerun the failing trial from the CLI.
pub fn witness(suite: &str, cfg: &SuiteConfig, trial: usize, inputs: &[Shape]) -> Value {
    json!({
        "suite": suite,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "dim": cfg.dim,
        "trial": trial,
        "inputs": inputs.iter().map(Shape::to_json_value).collect::<Vec<_>>(),
        "reproduce": format!("frechet verify --suite {suite} --seed {} --trials {} --dim {}", cfg.seed, cfg.trials, cfg.dim),
    })
}

pub fn path_shapes(cs: &[&Polyline]) -> Vec<Shape> {
    cs.iter().map(|c| Shape::Path((*c).clone())).collect()
}
