//! Command-line front end for `orbiklt`: input formats, report rendering and the
//! subcommand implementations. The binary in `main.rs` only parses arguments.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use error::CliError;
pub use report::{Format, Report};
