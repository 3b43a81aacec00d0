//! File formats, a sampling dependence oracle and the `finspace` command
//! line on top of the `finspace` library.

pub mod app;
pub mod dot;
pub mod error;
pub mod genotypes;
pub mod json;
pub mod oracle;
pub mod parallel;
pub mod report;

pub use app::run;
pub use error::CliError;
