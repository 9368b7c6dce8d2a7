//! Command-line front-end for exparabola computations: JSON reports, SVG
//! figures and a randomized verification harness.

pub mod commands;
pub mod error;
pub mod input;
pub mod oracle;
pub mod render;
pub mod report;
pub mod verify;

pub use error::{exit, CliError, CliResult};
pub use report::Report;
