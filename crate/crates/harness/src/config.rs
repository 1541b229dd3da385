use frechet_core::Tolerances;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub tol: Tolerances,
    /// Inclusive range of vertex counts for sampled curves.
    pub vertices: (usize, usize),
    /// Sampled coordinates lie in `[0, scale]`.
    pub scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 0, trials: 100, dim: 2, tol: Tolerances::default(), vertices: (5, 30), scale: 1.0 }
    }
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize, dim: usize) -> Self {
        Self { seed, trials, dim, ..Self::default() }
    }

    pub fn with_vertices(mut self, lo: usize, hi: usize) -> Self {
        self.vertices = (lo, hi);
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials < 1 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if self.dim < 1 {
            return Err(HarnessError::Config("dim must be at least 1".into()));
        }
        let (lo, hi) = self.vertices;
        if lo < 2 || hi < lo {
            return Err(HarnessError::Config(format!("bad vertex range {lo}..={hi}")));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(HarnessError::Config(format!("bad coordinate scale {}", self.scale)));
        }
        self.tol.validate().map_err(|e| HarnessError::Config(e.to_string()))
    }
}
