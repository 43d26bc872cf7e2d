//! Command-line front end for `laxalg`: TOML run configurations, report
//! trees rendered as tables or JSON, and an on-disk cache of degree bases.
//!
//! Exit status: 0 when every check passes, 1 when a verification check
//! fails, 2 for configuration errors.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use commands::{run, Command, Invocation};
pub use error::{CliError, CliResult};
