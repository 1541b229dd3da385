use frechet_core::{continuous_frechet, ClassLabel, Shape, DEFAULT_ISO_CAP};
use frechet_morph::{embed_morph, embedding_morph, shape_distance, verify_morph, Ball, EventKind, Family, Maneuver, MorphContext};

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::gallery::{Gallery, Scenario};
use crate::report::{flag, Check, PropertyResult, SuiteReport};
use crate::sample::{path_shapes, witness};
use crate::suites::{class_of, Suite};

pub struct GallerySuite;

fn scenario_witness(name: &str, cfg: &SuiteConfig, s: &Scenario) -> serde_json::Value {
    let mut w = witness("gallery", cfg, 0, &path_shapes(&[&s.p, &s.q]));
    w["scenario"] = name.into();
    w
}

fn distance_check(name: &str, cfg: &SuiteConfig, s: &Scenario) -> Result<PropertyResult, HarnessError> {
    let d = continuous_frechet(&s.p, &s.q, &cfg.tol)?;
    let mut c = Check::at_most(&format!("{name}_distance"), s.distance_tol);
    c.observe((d.value() - s.distance).abs(), || scenario_witness(name, cfg, s));
    Ok(c.finish())
}

fn ball_around(s: &Scenario, dim: usize) -> Result<Ball, HarnessError> {
    let center = s.center.as_ref().ok_or_else(|| HarnessError::Fixture("scenario has no ball center".into()))?;
    let radius = s.ball_radius.ok_or_else(|| HarnessError::Fixture("scenario has no ball radius".into()))?;
    Ok(Ball { center: Shape::Path(center.extended(dim)), radius })
}

/// Runs every gallery scenario; `cfg` only supplies tolerances and the seed
/// recorded in witnesses.
pub fn run_gallery(cfg: &SuiteConfig, g: &Gallery) -> Result<Vec<PropertyResult>, HarnessError> {
    let tol = cfg.tol;
    let base = MorphContext { tol, ..MorphContext::default() };
    let mut out = Vec::new();

    // G1: reversal on the line
    out.push(distance_check("g1", cfg, &g.g1)?);
    let seq = embedding_morph(&g.g1.p, &g.g1.q, &base)?;
    out.push(flag("g1_obstructed", seq.is_obstructed(), Some(scenario_witness("g1", cfg, &g.g1))));

    // G2: wide hooks in the plane
    let s = &g.g2;
    out.push(distance_check("g2", cfg, s)?);
    out.push(flag("g2_wider_than_distance", s.p.diameter() >= 5.0 * s.distance, Some(scenario_witness("g2", cfg, s))));
    let seq = embedding_morph(&s.p, &s.q, &base)?;
    let contact = seq.obstruction.as_ref().is_some_and(|o| o.kind == EventKind::SelfCross);
    out.push(flag("g2_straight_line_contact", contact, Some(scenario_witness("g2", cfg, s))));
    let radius = s.ball_radius.ok_or_else(|| HarnessError::Fixture("g2 needs a ball radius".into()))?;
    let ctx = MorphContext { ball: Some(Ball { center: Shape::Path(s.p.clone()), radius }), ..base.clone() };
    let seq = embed_morph(&s.p, &s.q, &ctx)?;
    let left = seq.obstruction.as_ref().is_some_and(|o| o.constraint == "ball");
    out.push(flag("g2_shrink_leaves_ball", left, Some(scenario_witness("g2", cfg, s))));

    // G3: mirrored loops
    let s = &g.g3;
    out.push(distance_check("g3", cfg, s)?);
    let ctx = MorphContext { ball: Some(ball_around(s, 3)?), ..base.clone() };
    let seq = embedding_morph(&s.p, &s.q, &ctx)?;
    let crossed = seq.obstruction.as_ref().is_some_and(|o| o.kind == EventKind::SelfCross);
    out.push(flag("g3_r3_self_cross", crossed, Some(scenario_witness("g3", cfg, s))));

    let bump = s.bump.ok_or_else(|| HarnessError::Fixture("g3 needs a bump".into()))?;
    let ball = ball_around(s, 4)?;
    let ctx = MorphContext { ball: Some(ball.clone()), bump: Some(bump), lift_to_4d: true, ..base.clone() };
    let seq = embedding_morph(&s.p, &s.q, &ctx)?;
    let verified = verify_morph(&seq, Some(&ball), &tol, DEFAULT_ISO_CAP)?;
    let lifted = seq.events.iter().any(|e| e.maneuver_applied == Maneuver::Lift4d && e.t > 0.0);
    let embedded = seq.frames.iter().all(|f| class_of(&f.shape, &tol) == ClassLabel::E);
    out.push(flag("g3_r4_lift", !seq.is_obstructed() && verified.passed && lifted && embedded, Some(scenario_witness("g3", cfg, s))));

    // excess over the unlifted straight-line frame at the same time
    let (family, _) = Family::path(&s.p.extended(4), &s.q.extended(4), &tol)?;
    let mut excess = Check::at_most("g3_lift_excess", bump + tol.eps_dist);
    for f in &seq.frames {
        let raw = Shape::Path(family.raw_curves(f.t).remove(0));
        let lifted_d = shape_distance(&f.shape, &ball.center, &tol, DEFAULT_ISO_CAP)?;
        let raw_d = shape_distance(&raw, &ball.center, &tol, DEFAULT_ISO_CAP)?;
        excess.observe(lifted_d.hi - raw_d.lo, || scenario_witness("g3", cfg, s));
    }
    out.push(excess.finish());
    Ok(out)
}

impl Suite for GallerySuite {
    fn name(&self) -> &'static str {
        "gallery"
    }

    fn defaults(&self) -> SuiteConfig {
        SuiteConfig { trials: 1, ..SuiteConfig::default() }
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
        let mut report = SuiteReport::new(self.name(), cfg.seed);
        report.properties = run_gallery(cfg, &Gallery::load()?)?;
        Ok(report)
    }
}
