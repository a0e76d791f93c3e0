//! Simulation of the quantum 2-SWITCH algorithm for the generalized Deutsch
//! problem (decide whether `n` one-bit black boxes contain an odd number of
//! constant functions), the fixed-order circuit and classical baselines, and
//! a Jones-calculus model of its Sagnac-loop photonic realization with
//! photon-counting statistics.

pub mod circuits;
pub mod counting;
pub mod error;
pub mod oracles;
pub mod qmath;
pub mod qswitch;
pub mod sagnac;
pub mod tables;

pub use error::{Error, Result};
pub use oracles::{BooleanFunction, FunctionClass, OracleSet};
pub use qmath::{Complex, ComplexMatrix, StateVector};
