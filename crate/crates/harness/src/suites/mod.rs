//! Named property suites behind a common trait.

use frechet_core::{ClassLabel, Shape, Tolerances};
use frechet_morph::classify_shape;

use crate::config::SuiteConfig;
use crate::error::HarnessError;
use crate::report::SuiteReport;

pub mod balls;
pub mod gallery;
pub mod graph;
pub mod immersion;
pub mod interpolation;
pub mod metric;
pub mod nonseparability;
pub mod sandwich;

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    /// Trial count and curve sizes the suite is meant to run with.
    fn defaults(&self) -> SuiteConfig {
        SuiteConfig::default()
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError>;
}

pub(crate) fn class_of(s: &Shape, tol: &Tolerances) -> ClassLabel {
    classify_shape(s, tol).class_label
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(metric::Metric));
        r.register(Box::new(nonseparability::Nonseparability));
        r.register(Box::new(sandwich::Sandwich));
        r.register(Box::new(interpolation::Interpolation));
        r.register(Box::new(immersion::Immersion));
        r.register(Box::new(balls::Balls));
        r.register(Box::new(gallery::GallerySuite));
        r.register(Box::new(graph::Graph));
        r
    }

    /// Adds a suite, replacing any suite of the same name.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite, HarnessError> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref()).ok_or_else(|| HarnessError::UnknownSuite(name.into()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    /// Validates `cfg`, runs the suite and stamps the elapsed time when asked.
    pub fn run(&self, name: &str, cfg: &SuiteConfig, timing: bool) -> Result<SuiteReport, HarnessError> {
        cfg.validate()?;
        let suite = self.get(name)?;
        let start = std::time::Instant::now();
        let mut report = suite.run(cfg)?;
        if timing {
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(report)
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}
