//! Command-line front end: word-spec parsing, configuration, reports and
//! command dispatch. The binary is a thin wrapper around [`run`].

pub mod config;
pub mod parse;
pub mod report;

mod commands;

pub use commands::{run, Output, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
pub use parse::{parse_spec, SpecError};
