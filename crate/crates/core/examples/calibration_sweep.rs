//! Sweeps noise-model settings and prints the resulting success statistics
//! over both experiment tables and a range of seeds.
//!
//! ```text
//! cargo run --release -p cswitch --example calibration_sweep -- 0.2 0.01 0.005 0.005
//! ```
//! Arguments: plate angle sigma (deg), retardance sigma (rad), BS imbalance
//! sigma, dark-count rate. Without arguments the calibrated defaults are used.

use cswitch::counting::{run_full_experiment, DEFAULT_SHOTS};
use cswitch::sagnac::NoiseModel;
use cswitch::tables::ExperimentTable;

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let mut model = NoiseModel::calibrated(0);
    if let [angle, retardance, bs, dark] = args[..] {
        model.plate_angle_sigma = angle;
        model.retardance_sigma = retardance;
        model.bs_imbalance_sigma = bs;
        model.dark_count_rate = dark;
    }

    for table in [ExperimentTable::Deutsch, ExperimentTable::TwoFunction] {
        let (mut lo, mut hi, mut worst, mut spread) = (1.0f64, 0.0f64, 1.0f64, 0.0);
        let seeds = 40;
        for seed in 0..seeds {
            model.rng_seed = seed;
            let r = run_full_experiment(table, &model, DEFAULT_SHOTS).expect("valid model");
            lo = lo.min(r.mean_success);
            hi = hi.max(r.mean_success);
            worst = worst.min(r.min_success);
            spread += r.spread;
        }
        println!(
            "{table:>12}: mean in [{lo:.5}, {hi:.5}], worst cell {worst:.5}, avg spread {:.5}",
            spread / seeds as f64
        );
    }
}
