//! Experiment driver behind the `boxmat` binary: configuration, the
//! experiments themselves, and CSV/JSON report emission.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use config::{Command, ExperimentConfig, OutputFormat};
pub use error::CliError;
pub use experiments::run;
pub use report::{Cell, Column, Precision, Report};
