//! Verification harness for `symdomain`: a registry of numerical checks,
//! suites built from it, and JSON or text reports.

pub mod checks;
pub mod config;
pub mod error;
pub mod registry;
pub mod report;
pub mod suite;
pub mod tools;

pub use checks::{CheckInput, Measurement};
pub use error::VerifyError;
pub use report::{CheckRecord, Format, Report, Status};
pub use suite::{build_suite, build_suites, run_suite, Options, SuiteSpec};
