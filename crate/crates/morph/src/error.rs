use frechet_core::{FrechetError, GeometryError, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MorphError {
    #[error(transparent)]
    Frechet(#[from] FrechetError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("inputs are not homeomorphic; no morph exists")]
    NotHomeomorphic,
    #[error("need at least 2 frames, got {0}")]
    TooFewFrames(usize),
    #[error("input has class {found}, strategy needs {needed}")]
    InputClass { found: String, needed: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("unknown morph strategy {0:?}")]
    UnknownStrategy(String),
    #[error("bump {bump} exceeds available slack {slack}")]
    BumpTooLarge { bump: f64, slack: f64 },
}
