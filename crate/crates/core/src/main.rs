use std::process::ExitCode;

use clap::Parser;
use duality_kit::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(execute(&cli))
}
