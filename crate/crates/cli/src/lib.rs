//! Batch verification driver: configuration, suites and reports.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{SuiteConfig, N_MAX_LIMIT, SUITES};
pub use report::{report, Format, Mode, ReportRecord};
pub use suites::{run_suite, run_suite_with_jobs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("report error: {0}")]
    Report(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Core(#[from] chern_core::Error),
}
