use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: row {row}, column {column}: cannot parse {cell:?} as a finite number")]
    BadCell {
        path: PathBuf,
        row: usize,
        column: usize,
        cell: String,
    },

    #[error("time series needs at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("time series contains a non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("degenerate split: fraction {fraction} of {len} samples leaves an empty half")]
    DegenerateSplit { fraction: f64, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("integration produced a non-finite state at step {step}")]
    IntegrationBlowUp { step: usize },

    #[error("regularization factor {0} would flip weight signs (must be < 1)")]
    RegularizationTooStrong(f64),

    #[error("non-finite parameter after update in layer {layer}")]
    NonFiniteUpdate { layer: usize },

    #[error("training series has zero standard deviation")]
    ZeroVariance,

    #[error("training diverged at epoch {epoch}")]
    Diverged { epoch: usize },

    #[error("malformed network topology: {0}")]
    Topology(String),

    #[error("model file parse error at byte offset {offset} (line {line}, column {column}): {message}")]
    ModelParse {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported model format version {found} (expected {expected})")]
    UnsupportedVersion { found: u64, expected: u64 },

    #[error("model dimension mismatch: {0}")]
    ModelDimension(String),

    #[error("non-finite {what} in layer {layer} at index {index}")]
    ModelNonFinite {
        what: &'static str,
        layer: usize,
        index: usize,
    },

    #[error("time grid mismatch: {0}")]
    TimeGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
