//! Command line and HTTP front ends for `rubikmap`.

pub mod commands;
pub mod service;

pub use commands::{execute, run, Cli, CliError, Command, Outcome};
