use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the fidelity measures, calibration and dataset loading.
#[derive(Debug, Error)]
pub enum SrifError {
    #[error("DimensionTooSmall: {what} needs at least {min} px per axis, got {width}x{height}")]
    DimensionTooSmall {
        what: &'static str,
        min: usize,
        width: usize,
        height: usize,
    },

    #[error("DimensionMismatch: {what}: expected {expected_w}x{expected_h}, got {got_w}x{got_h}")]
    DimensionMismatch {
        what: &'static str,
        expected_w: usize,
        expected_h: usize,
        got_w: usize,
        got_h: usize,
    },

    #[error("EdgeMismatch: histograms were built over different bin edges")]
    EdgeMismatch,

    #[error("DegenerateReference: {0}")]
    DegenerateReference(&'static str),

    #[error("InsufficientData: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("DegenerateScores: {0}")]
    DegenerateScores(&'static str),

    #[error("WeightNormalization: w_d + w_s = {sum}, expected 1")]
    WeightNormalization { sum: f64 },

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("ParseError at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("DecodeError: {path}: {message}")]
    Decode { path: PathBuf, message: String },

    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = SrifError> = std::result::Result<T, E>;
