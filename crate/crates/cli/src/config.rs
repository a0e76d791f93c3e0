use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cswitch::sagnac::NoiseModel;
use cswitch::OracleSet;
use serde::Deserialize;

use crate::args::{Cli, Command, Format};

pub const SEED_ENV: &str = "CSWITCH_SEED";

/// Sigmas without a seed, for custom noise in config files.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseParams {
    pub plate_angle_sigma: f64,
    pub retardance_sigma: f64,
    pub bs_imbalance_sigma: f64,
    pub dark_count_rate: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NoiseSetting {
    Preset(String),
    Custom(NoiseParams),
}

impl NoiseSetting {
    pub fn model(&self, seed: u64) -> Result<NoiseModel> {
        let m = match self {
            NoiseSetting::Preset(name) => match name.as_str() {
                "none" => NoiseModel::none(seed),
                "default" | "calibrated" => NoiseModel::calibrated(seed),
                other => bail!("unknown noise preset {other:?} (expected none or default)"),
            },
            NoiseSetting::Custom(p) => NoiseModel {
                plate_angle_sigma: p.plate_angle_sigma,
                retardance_sigma: p.retardance_sigma,
                bs_imbalance_sigma: p.bs_imbalance_sigma,
                dark_count_rate: p.dark_count_rate,
                rng_seed: seed,
            },
        };
        m.validate()?;
        Ok(m)
    }
}

/// Contents of a `--config` JSON file. Every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub oracles: Option<OracleSet>,
    pub n: Option<usize>,
    pub noise: Option<NoiseSetting>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub table: Option<String>,
    pub target: Option<String>,
    pub input: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub oracle_set: Option<OracleSet>,
    pub n: Option<usize>,
    pub noise: NoiseSetting,
    pub shots: u64,
    pub seed: u64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub table: Option<String>,
    pub target: Option<String>,
    pub input: Option<String>,
}

fn parse_oracles(text: &str) -> Result<OracleSet> {
    OracleSet::parse(text).map_err(anyhow::Error::from)
}

impl RunConfig {
    pub fn resolve(cli: Cli, env_seed: Option<String>) -> Result<Self> {
        let file = match &cli.global.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let env_seed = match env_seed {
            Some(s) => Some(
                s.trim()
                    .parse::<u64>()
                    .with_context(|| format!("{SEED_ENV}={s:?} is not an unsigned integer"))?,
            ),
            None => None,
        };
        let seed = cli.global.seed.or(file.seed).or(env_seed).unwrap_or(0);

        let mut cfg = RunConfig {
            command: cli.command.clone(),
            oracle_set: file.oracles,
            n: file.n,
            noise: file.noise.unwrap_or(NoiseSetting::Preset("none".into())),
            shots: file.shots.unwrap_or(cswitch::counting::DEFAULT_SHOTS),
            seed,
            output_format: cli.global.format.or(file.format).unwrap_or(Format::Csv),
            output_path: cli.global.out.or(file.out),
            table: file.table,
            target: file.target,
            input: file.input,
        };

        match &cli.command {
            Command::Ico { oracles, target } => {
                if let Some(text) = oracles {
                    cfg.oracle_set = Some(parse_oracles(text)?);
                }
                if target.is_some() {
                    cfg.target = target.clone();
                }
            }
            Command::Deutsch { oracles } | Command::Classical { oracles } => {
                if let Some(text) = oracles {
                    cfg.oracle_set = Some(parse_oracles(text)?);
                }
            }
            Command::Sweep { n } | Command::Report { n } => {
                if n.is_some() {
                    cfg.n = *n;
                }
            }
            Command::Experiment {
                table,
                noise,
                shots,
            } => {
                if table.is_some() {
                    cfg.table = table.clone();
                }
                if let Some(name) = noise {
                    cfg.noise = NoiseSetting::Preset(name.clone());
                }
                if let Some(shots) = shots {
                    cfg.shots = *shots;
                }
            }
            Command::Calibrate { input, noise } => {
                if input.is_some() {
                    cfg.input = input.clone();
                }
                if let Some(name) = noise {
                    cfg.noise = NoiseSetting::Preset(name.clone());
                }
            }
        }
        cfg.check_oracle_space()?;
        Ok(cfg)
    }

    /// Oracle commands take a set and no `n`; sweep/report take `n` and no set.
    fn check_oracle_space(&self) -> Result<()> {
        match self.command {
            Command::Ico { .. } | Command::Deutsch { .. } | Command::Classical { .. } => {
                if self.oracle_set.is_none() {
                    bail!("--oracles is required");
                }
                if self.n.is_some() {
                    bail!("give either an oracle set or n, not both");
                }
            }
            Command::Sweep { .. } | Command::Report { .. } => {
                if self.n.is_none() {
                    bail!("--n is required");
                }
                if self.oracle_set.is_some() {
                    bail!("give either an oracle set or n, not both");
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn oracles(&self) -> &OracleSet {
        self.oracle_set.as_ref().expect("checked in resolve")
    }

    pub fn n(&self) -> usize {
        self.n.expect("checked in resolve")
    }
}
