use std::process::ExitCode;

use clap::Parser;
use cswitch_cli::Cli;

fn main() -> ExitCode {
    match cswitch_cli::execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
