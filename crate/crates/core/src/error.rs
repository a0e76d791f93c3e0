use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix has {rows}x{cols} shape but {len} entries were supplied")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("{0} is not unitary")]
    NotUnitary(&'static str),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("beam splitter transmittance must lie in [0, 1], got {0}")]
    InvalidTransmittance(f64),

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("an oracle set needs at least one function (n >= 1)")]
    EmptyOracleSet,

    #[error("truth-table entries must be 0 or 1, got {0}")]
    InvalidBit(u8),

    #[error("unknown function alias {0:?} (expected c0, c1, b01 or b10)")]
    UnknownAlias(String),

    #[error("phase calibration impossible: {0}")]
    CalibrationImpossible(&'static str),

    #[error("invalid noise model: {0}")]
    InvalidNoise(&'static str),

    #[error("report serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
