//! Command-line driver for `phik-core`: evaluation, verification suites and
//! reports in plain, CSV or JSON form.

pub mod cli;
pub mod error;
pub mod parallel;
pub mod report;

pub use error::{CliError, ExitStatus};
