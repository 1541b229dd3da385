//! Fixed counterexample geometry, read from `fixtures/gallery.json`.

use frechet_core::polyline::CurveJson;
use frechet_core::Polyline;
use serde::Deserialize;

use crate::error::HarnessError;

pub const GALLERY_JSON: &str = include_str!("../fixtures/gallery.json");

#[derive(Clone, Debug, Deserialize)]
struct RawScenario {
    p: CurveJson,
    q: CurveJson,
    center: Option<CurveJson>,
    distance: f64,
    distance_tol: f64,
    ball_radius: Option<f64>,
    bump: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub p: Polyline,
    pub q: Polyline,
    pub center: Option<Polyline>,
    /// Oracle value of the oriented distance between `p` and `q`.
    pub distance: f64,
    pub distance_tol: f64,
    pub ball_radius: Option<f64>,
    pub bump: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Gallery {
    pub g1: Scenario,
    pub g2: Scenario,
    pub g3: Scenario,
}

#[derive(Deserialize)]
struct RawGallery {
    g1: RawScenario,
    g2: RawScenario,
    g3: RawScenario,
}

impl Scenario {
    fn from_raw(r: RawScenario) -> Result<Self, HarnessError> {
        let c = |j: &CurveJson| Polyline::from_json(j).map_err(|e| HarnessError::Fixture(e.to_string()));
        Ok(Self {
            p: c(&r.p)?,
            q: c(&r.q)?,
            center: r.center.as_ref().map(c).transpose()?,
            distance: r.distance,
            distance_tol: r.distance_tol,
            ball_radius: r.ball_radius,
            bump: r.bump,
        })
    }
}

impl Gallery {
    pub fn load() -> Result<Self, HarnessError> {
        Self::parse(GALLERY_JSON)
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let raw: RawGallery = serde_json::from_str(text)?;
        Ok(Self { g1: Scenario::from_raw(raw.g1)?, g2: Scenario::from_raw(raw.g2)?, g3: Scenario::from_raw(raw.g3)? })
    }
}
