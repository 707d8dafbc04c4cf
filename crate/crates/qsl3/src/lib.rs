//! Command-line verifier for quantum SL(3) data: suite runners, reports and
//! text/JSON formats on top of `qsl3-core`.

pub mod cli;
pub mod config;
pub mod formats;
pub mod report;
pub mod run;
pub mod suites;

pub use config::{Command, Family, RunConfig, TSpec};
pub use report::{Check, RunReport, Status, SuiteReport};
pub use run::run;
