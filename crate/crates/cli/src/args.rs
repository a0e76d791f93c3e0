use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cswitch",
    version,
    about = "Quantum 2-SWITCH solver for the generalized Deutsch problem and its Sagnac-loop simulation"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// RNG seed; falls back to the config file, then $CSWITCH_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file (or directory for `experiment`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// JSON run configuration; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the indefinite-causal-order algorithm on one oracle set.
    Ico {
        /// JSON truth tables (`[[0,0],[0,1]]`) or aliases (`c0,b01`).
        #[arg(long)]
        oracles: Option<String>,
        /// Target state: 0, 1, + or -.
        #[arg(long)]
        target: Option<String>,
    },
    /// Run the fixed-order generalized Deutsch circuit.
    Deutsch {
        #[arg(long)]
        oracles: Option<String>,
    },
    /// Run the classical two-queries-per-function baseline.
    Classical {
        #[arg(long)]
        oracles: Option<String>,
    },
    /// Run all three methods over every oracle set of size n.
    Sweep {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Simulate the photonic experiment with shot noise.
    Experiment {
        /// deutsch or two-function
        #[arg(long)]
        table: Option<String>,
        /// none or default (the calibrated model)
        #[arg(long)]
        noise: Option<String>,
        /// Shots per configuration and input basis.
        #[arg(long)]
        shots: Option<u64>,
    },
    /// Query counts of the three methods.
    Report {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Liquid-crystal phase that zeroes the loop with U1 = I.
    Calibrate {
        /// Input polarization: H, V, D or A.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        noise: Option<String>,
    },
}
