use std::process::ExitCode;

use clap::Parser;
use rubikmap_cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
