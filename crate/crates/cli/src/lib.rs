//! Command-line front end for the `cswitch` simulator.

pub mod args;
pub mod commands;
pub mod config;

use std::fs;

use anyhow::{Context, Result};

pub use args::Cli;
pub use commands::Output;
pub use config::RunConfig;

/// Resolves configuration, runs the command and writes its output.
/// Returns whether all verification checks passed.
pub fn execute(cli: Cli) -> Result<bool> {
    let env_seed = std::env::var(config::SEED_ENV).ok();
    let cfg = RunConfig::resolve(cli, env_seed)?;
    let out = commands::run(&cfg)?;
    if let Some(summary) = &out.summary {
        eprintln!("{summary}");
    }
    let is_experiment = matches!(cfg.command, args::Command::Experiment { .. });
    match &cfg.output_path {
        Some(path) if !is_experiment => {
            fs::write(path, &out.body).with_context(|| format!("writing {}", path.display()))?;
        }
        _ => print!("{}", out.body),
    }
    Ok(out.verified)
}
