//! Shot-level Monte Carlo of the counting stage and the success statistics
//! built on it.
//!
//! Every (configuration, input basis) pair owns an independent ChaCha stream
//! derived from `(seed, config_index, basis_index)`, so reports do not depend
//! on evaluation order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sagnac::{
    calibrate_phase, oracle_stack, perturb_with, simulate_sagnac, standard_stack, Gate, NoiseModel,
    Polarization, Port, SagnacConfig,
};
use crate::tables::ExperimentTable;

/// Shots per configuration used by the reference measurement.
pub const DEFAULT_SHOTS: u64 = 600_000;

pub const VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"));

/// Outcome split between the expected port and the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotTally {
    pub shots: u64,
    pub expected: u64,
    pub other: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub shots: u64,
    pub counts_a: u64,
    pub counts_b: u64,
    pub config_label: String,
    pub input_basis: Polarization,
}

impl CountRecord {
    pub fn from_tally(
        label: impl Into<String>,
        basis: Polarization,
        expected_port: Port,
        t: ShotTally,
    ) -> Self {
        let (counts_a, counts_b) = match expected_port {
            Port::A => (t.expected, t.other),
            Port::B => (t.other, t.expected),
        };
        Self {
            shots: t.shots,
            counts_a,
            counts_b,
            config_label: label.into(),
            input_basis: basis,
        }
    }

    pub fn counts(&self, port: Port) -> u64 {
        match port {
            Port::A => self.counts_a,
            Port::B => self.counts_b,
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// `shots` independent Bernoulli(`p`) trials from a generator seeded with `rng_seed`.
pub fn sample_counts(p_expected_port: f64, shots: u64, rng_seed: u64) -> Result<ShotTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sample_counts_with(p_expected_port, shots, 0.0, &mut rng)
}

/// Like [`sample_counts`], with a fraction `dark_rate` of shots replaced by
/// detector clicks that land on either port with equal odds.
pub fn sample_counts_with<R: Rng + ?Sized>(
    p_expected_port: f64,
    shots: u64,
    dark_rate: f64,
    rng: &mut R,
) -> Result<ShotTally> {
    check_probability(p_expected_port)?;
    check_probability(dark_rate)?;
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let dark = draw_binomial(shots, dark_rate, rng);
    let photons = shots - dark;
    let expected = draw_binomial(photons, p_expected_port, rng) + draw_binomial(dark, 0.5, rng);
    Ok(ShotTally {
        shots,
        expected,
        other: shots - expected,
    })
}

fn draw_binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> u64 {
    if n == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p checked").sample(rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub p_hat: f64,
    pub sigma: f64,
}

/// Success fraction at `expected_port` with its binomial standard error.
/// At the boundaries (0 or all shots) the error is floored at
/// `√((p̂(1−p̂)+1)/N)` so no bar collapses to zero.
pub fn estimate(r: &CountRecord, expected_port: Port) -> Estimate {
    let n = r.shots as f64;
    let hits = r.counts(expected_port);
    let p_hat = hits as f64 / n;
    let var = p_hat * (1.0 - p_hat);
    let sigma = if hits == 0 || hits == r.shots {
        ((var + 1.0) / n).sqrt()
    } else {
        (var / n).sqrt()
    };
    Estimate { p_hat, sigma }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSuccess {
    pub label: String,
    pub basis: Polarization,
    pub expected_port: Port,
    pub p_hat: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub version: String,
    pub table: ExperimentTable,
    pub seed: u64,
    pub shots_per_config: u64,
    pub noise: NoiseModel,
    /// `none`, `CALIBRATED` (the documented default model) or `custom`.
    pub noise_label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: ReportMetadata,
    pub records: Vec<CountRecord>,
    pub per_config_success: Vec<ConfigSuccess>,
    pub mean_success: f64,
    /// Mean of the per-configuration binomial errors.
    pub mean_sigma: f64,
    /// Sample standard deviation of `p̂` across configurations and bases.
    pub spread: f64,
    pub min_success: f64,
}

/// One row of the CSV form of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub label: String,
    pub basis: Polarization,
    pub shots: u64,
    pub counts_a: u64,
    pub counts_b: u64,
    pub p_hat: f64,
    pub sigma: f64,
}

/// Bar heights for one configuration and input basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub label: String,
    pub basis: Polarization,
    pub port_a: f64,
    pub port_b: f64,
}

impl ExperimentReport {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.records
            .iter()
            .zip(&self.per_config_success)
            .map(|(r, s)| CsvRow {
                label: r.config_label.clone(),
                basis: r.input_basis,
                shots: r.shots,
                counts_a: r.counts_a,
                counts_b: r.counts_b,
                p_hat: s.p_hat,
                sigma: s.sigma,
            })
            .collect()
    }

    pub fn plot_rows(&self) -> Vec<PlotRow> {
        self.records
            .iter()
            .map(|r| PlotRow {
                label: r.config_label.clone(),
                basis: r.input_basis,
                port_a: r.counts_a as f64 / r.shots as f64,
                port_b: r.counts_b as f64 / r.shots as f64,
            })
            .collect()
    }

    /// Columns: label, basis, shots, counts_a, counts_b, p_hat, sigma.
    pub fn to_csv(&self) -> Result<String> {
        write_csv(&self.csv_rows())
    }

    /// Columns: label, basis, port_a, port_b.
    pub fn plot_csv(&self) -> Result<String> {
        write_csv(&self.plot_rows())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialize(e.to_string()))
    }
}

pub fn write_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Serialize(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
}

fn noise_label(m: &NoiseModel) -> &'static str {
    if m.is_noiseless() {
        "none"
    } else if *m == NoiseModel::calibrated(m.rng_seed) {
        "CALIBRATED"
    } else {
        "custom"
    }
}

/// Independent generator for one (configuration, basis) cell.
pub fn cell_rng(seed: u64, config_index: usize, basis_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((config_index as u64) << 8) | basis_index as u64);
    rng
}

/// Probability of the expected port for one noisy realization of a table row.
///
/// The loop is recalibrated on every draw the way it is in the lab: `U₁` set
/// to the identity stack, an `H` photon injected, phase tuned for port `b`.
pub fn expected_port_probability<R: Rng + ?Sized>(
    ideal: &SagnacConfig,
    expected_port: Port,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<f64> {
    let mut cfg = perturb_with(ideal, noise, rng)?;
    cfg.interferometer_phase = calibrate_phase(&cfg.u2_stack, &Polarization::H.state())?;
    let out = simulate_sagnac(&cfg)?;
    Ok(out.probability(expected_port).clamp(0.0, 1.0))
}

/// Every row of `table` under every input basis: perturb, calibrate,
/// simulate, count, estimate.
pub fn run_full_experiment(
    table: ExperimentTable,
    noise: &NoiseModel,
    shots: u64,
) -> Result<ExperimentReport> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    noise.validate()?;
    let u2 = standard_stack(Gate::X);
    let mut records = Vec::new();
    let mut per_config_success = Vec::new();

    for (ci, row) in table.rows().into_iter().enumerate() {
        let u1 = oracle_stack(&row.oracles);
        for (bi, basis) in Polarization::ALL.into_iter().enumerate() {
            let mut rng = cell_rng(noise.rng_seed, ci, bi);
            let ideal = SagnacConfig::ideal(u1.clone(), u2.clone(), basis);
            let p = expected_port_probability(&ideal, row.expected_port, noise, &mut rng)?;
            let tally = sample_counts_with(p, shots, noise.dark_count_rate, &mut rng)?;
            let record =
                CountRecord::from_tally(row.label.clone(), basis, row.expected_port, tally);
            let est = estimate(&record, row.expected_port);
            per_config_success.push(ConfigSuccess {
                label: row.label.clone(),
                basis,
                expected_port: row.expected_port,
                p_hat: est.p_hat,
                sigma: est.sigma,
            });
            records.push(record);
        }
    }

    let k = per_config_success.len() as f64;
    let mean_success = per_config_success.iter().map(|s| s.p_hat).sum::<f64>() / k;
    let mean_sigma = per_config_success.iter().map(|s| s.sigma).sum::<f64>() / k;
    let spread = if per_config_success.len() > 1 {
        (per_config_success
            .iter()
            .map(|s| (s.p_hat - mean_success).powi(2))
            .sum::<f64>()
            / (k - 1.0))
            .sqrt()
    } else {
        0.0
    };
    let min_success = per_config_success
        .iter()
        .map(|s| s.p_hat)
        .fold(f64::INFINITY, f64::min);

    Ok(ExperimentReport {
        metadata: ReportMetadata {
            version: VERSION.to_string(),
            table,
            seed: noise.rng_seed,
            shots_per_config: shots,
            noise: *noise,
            noise_label: noise_label(noise).to_string(),
        },
        records,
        per_config_success,
        mean_success,
        mean_sigma,
        spread,
        min_success,
    })
}
