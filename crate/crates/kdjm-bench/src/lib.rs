//! Experiment harness for the k-disjoint matching algorithms: plan
//! definitions, a timed runner with timeout and OPT/BEST-relative quality,
//! fixed-schema CSV output, and summary reporting.

pub mod csvio;
pub mod plan;
pub mod report;
pub mod runner;

pub use plan::ExperimentPlan;
pub use runner::{ExperimentRecord, RunStatus};
