//! Seeded property suites and a fixed counterexample gallery.

pub mod config;
pub mod error;
pub mod gallery;
pub mod report;
pub mod sample;
pub mod suites;

pub use config::SuiteConfig;
pub use error::HarnessError;
pub use gallery::{Gallery, Scenario};
pub use report::{PropertyResult, SuiteReport};
pub use suites::balls::ball_connectivity;
pub use suites::gallery::run_gallery;
pub use suites::{Suite, SuiteRegistry};
