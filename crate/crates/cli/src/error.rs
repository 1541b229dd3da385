use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Frechet(#[from] frechet_core::FrechetError),
    #[error(transparent)]
    Geometry(#[from] frechet_core::GeometryError),
    #[error(transparent)]
    Morph(#[from] frechet_morph::MorphError),
    #[error(transparent)]
    Harness(#[from] frechet_harness::HarnessError),
}
