use frechet_core::{continuous_frechet, ClassLabel, Point, Polyline, Shape, Tolerances, DEFAULT_ISO_CAP};
use frechet_morph::{chain_morphs, embedding_morph, verify_morph, Ball, Maneuver, MorphContext, StrategyRegistry};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::gallery::Gallery;
use crate::report::{flag, Check, PropertyResult, SuiteReport};
use crate::sample::{curve, path_shapes, trial_rng, witness};
use crate::suites::{class_of, Suite};

pub struct Balls;

/// Ball radius as a multiple of the farthest member.
pub const RADIUS_FACTOR: f64 = 1.2;
const JITTER: f64 = 0.15;

fn letter(class: ClassLabel) -> &'static str {
    match class {
        ClassLabel::C => "C",
        ClassLabel::I => "I",
        ClassLabel::E => "E",
    }
}

/// Draws until the curve lies in `class`.
fn draw_in_class(rng: &mut impl Rng, class: ClassLabel, dim: usize, scale: f64, tol: &Tolerances) -> Polyline {
    // embeddings are sampled in a 3-dimensional slice so crossings still happen
    let sample_dim = if class == ClassLabel::E { dim.min(3) } else { dim };
    loop {
        let n = rng.gen_range(4..=8);
        let c = curve(rng, sample_dim, n, scale).extended(dim);
        if class_of(&Shape::Path(c.clone()), tol).satisfies(class) {
            return c;
        }
    }
}

fn jitter(rng: &mut impl Rng, c: &Polyline, class: ClassLabel, scale: f64, tol: &Tolerances) -> Polyline {
    let live = if class == ClassLabel::E { c.dim().min(3) } else { c.dim() };
    loop {
        let vs: Vec<Point> = c
            .vertices()
            .iter()
            .map(|v| {
                let mut x = v.coords().to_vec();
                for xi in x.iter_mut().take(live) {
                    *xi += rng.gen_range(-JITTER..JITTER) * scale;
                }
                Point::new(x).expect("finite")
            })
            .collect();
        if let Ok(out) = Polyline::new(vs) {
            if class_of(&Shape::Path(out.clone()), tol).satisfies(class) {
                return out;
            }
        }
    }
}

/// Samples (center, p1, p2), morphs p1 to the center and on to p2 with the
/// class strategy, and checks the chain stays strictly inside the ball.
pub fn ball_connectivity(cfg: &SuiteConfig, class: ClassLabel) -> Result<Vec<PropertyResult>, HarnessError> {
    let tol = cfg.tol;
    let tag = format!("{}_dim{}", letter(class), cfg.dim);
    let registry = StrategyRegistry::with_defaults();
    let strategy = registry.for_class(letter(class))?;
    let mut inside = Check::at_most(&format!("{tag}_inside_ball"), 0.0);
    let mut worst = Check::at_most(&format!("{tag}_center_distance_ratio"), 1.0);
    let mut lifts = 0usize;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, 6, trial);
        let p0 = draw_in_class(&mut rng, class, cfg.dim, cfg.scale, &tol);
        let p1 = jitter(&mut rng, &p0, class, cfg.scale, &tol);
        let p2 = jitter(&mut rng, &p0, class, cfg.scale, &tol);
        let w = || witness("balls", cfg, trial, &path_shapes(&[&p0, &p1, &p2]));
        let d1 = continuous_frechet(&p1, &p0, &tol)?.hi;
        let d2 = continuous_frechet(&p2, &p0, &tol)?.hi;
        let ball = Ball { center: Shape::Path(p0.clone()), radius: RADIUS_FACTOR * d1.max(d2).max(tol.eps_dist) };
        let ctx = MorphContext { tol, ball: Some(ball.clone()), ..MorphContext::default() };
        let (s0, s1, s2) = (Shape::Path(p0.clone()), Shape::Path(p1.clone()), Shape::Path(p2.clone()));
        let seq = chain_morphs(strategy.morph(&s1, &s0, &ctx)?, strategy.morph(&s0, &s2, &ctx)?);
        lifts += seq.events.iter().filter(|e| e.maneuver_applied == Maneuver::Lift4d).count();
        let report = verify_morph(&seq, Some(&ball), &tol, DEFAULT_ISO_CAP)?;
        inside.observe_bool(report.passed && !seq.is_obstructed(), w);
        if let Some(m) = report.max_center_distance {
            worst.observe(m / ball.radius, w);
        }
    }
    let mut out = vec![inside.finish(), worst.finish()];
    if class == ClassLabel::E && cfg.dim >= 4 {
        let mut c = Check::at_least(&format!("{tag}_lift_events"), 1.0);
        c.observe(lifts as f64, || witness("balls", cfg, 0, &[]));
        out.push(c.finish());
    }
    Ok(out)
}

/// On the line, members of opposite orientation cannot be joined through
/// immersions.
fn line_reversal(cfg: &SuiteConfig) -> Result<PropertyResult, HarnessError> {
    let tol = cfg.tol;
    let mut c = Check::at_most("I_dim1_reversal_obstructed", 0.0);
    for trial in 0..cfg.trials.min(5) {
        let mut rng = trial_rng(cfg.seed, 7, trial);
        let n = rng.gen_range(2..=5);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..cfg.scale)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        if xs.len() < 2 {
            xs = vec![0.0, cfg.scale];
        }
        let p0 = Polyline::new(xs.iter().map(|&x| Point::new(vec![x]).expect("finite")).collect())?;
        let p1 = p0.reverse();
        let d = continuous_frechet(&p1, &p0, &tol)?.hi;
        let ball = Ball { center: Shape::Path(p0.clone()), radius: RADIUS_FACTOR * d };
        let ctx = MorphContext { tol, ball: Some(ball), ..MorphContext::default() };
        let seq = frechet_morph::immersion_morph(&p1, &p0, &ctx)?;
        c.observe_bool(seq.is_obstructed(), || witness("balls", cfg, trial, &path_shapes(&[&p0, &p1])));
    }
    Ok(c.finish())
}

impl Suite for Balls {
    fn name(&self) -> &'static str {
        "balls"
    }

    fn defaults(&self) -> SuiteConfig {
        SuiteConfig { trials: 25, ..SuiteConfig::default() }
    }

    /// Runs C and I in the plane, E in dimension 4, and the two negative
    /// cases; `cfg.dim` is not used.
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let mut props = Vec::new();
        for (class, dim) in [(ClassLabel::C, 2), (ClassLabel::I, 2), (ClassLabel::E, 4)] {
            props.extend(ball_connectivity(&SuiteConfig { dim, ..cfg.clone() }, class)?);
        }
        props.push(line_reversal(cfg)?);
        let g3 = Gallery::load()?.g3;
        let center = g3.center.clone().ok_or_else(|| HarnessError::Fixture("g3 needs a center".into()))?;
        let radius = g3.ball_radius.ok_or_else(|| HarnessError::Fixture("g3 needs a ball radius".into()))?;
        let ctx = MorphContext { tol: cfg.tol, ball: Some(Ball { center: Shape::Path(center), radius }), ..MorphContext::default() };
        let seq = embedding_morph(&g3.p, &g3.q, &ctx)?;
        props.push(flag("E_dim3_mirrored_loops_obstructed", seq.is_obstructed(), Some(witness("balls", cfg, 0, &path_shapes(&[&g3.p, &g3.q])))));
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = props;
        Ok(report)
    }
}
