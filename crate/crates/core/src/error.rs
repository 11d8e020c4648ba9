use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mesh needs at least 2 elements, got {0}")]
    MeshTooCoarse(usize),

    #[error("shape mismatch: expected {expected} values, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("zero or negative pivot {pivot:e} at row {row}; matrix is not positive definite")]
    NonPositivePivot { row: usize, pivot: f64 },

    #[error("mode index must be at least 1")]
    ZeroMode,

    #[error("mesh with h = {h:e} does not resolve mode {n} (need h <= {required:e})")]
    UnderResolved { n: usize, h: f64, required: f64 },

    #[error("series needs N >= 8 to classify growth, got {0}")]
    SeriesTooShort(usize),

    #[error("brute-force oracle is limited to N <= 8, got {0}")]
    BruteForceTooLarge(usize),

    #[error("time step {tau:e} does not resolve slab {n} with {samples} samples")]
    TimeUnderResolved { n: usize, tau: f64, samples: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("source term produced a non-finite value at t = {t}")]
    NonFiniteSource { t: f64 },

    #[error("function evaluation produced a non-finite value at x = {x}")]
    NonFiniteValue { x: f64 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
