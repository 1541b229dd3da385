use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid suite config: {0}")]
    Config(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Geometry(#[from] frechet_core::GeometryError),
    #[error(transparent)]
    Frechet(#[from] frechet_core::FrechetError),
    #[error(transparent)]
    Morph(#[from] frechet_morph::MorphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
