use thiserror::Error;

/// Errors for construction and evaluation of the library's objects.
///
/// Genuinely divergent quantities are *not* errors; they are reported through
/// [`crate::ExtReal::Infinite`]. Errors mean the request itself was invalid.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value at index {idx}: {value}")]
    NonFinite { idx: usize, value: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("non-integrable at zero: power-law exponent {exponent} >= 1")]
    NonIntegrableAtZero { exponent: f64 },

    #[error("non-integrable weight over cell {cell}: exponent {exponent}")]
    NonIntegrableCell { cell: usize, exponent: f64 },

    #[error("measure mismatch: |E| = {e} but |W| = {w}")]
    MeasureMismatch { e: f64, w: f64 },

    #[error("empty grid: {0}")]
    EmptyGrid(String),

    #[error("missing field `{0}` for this rule")]
    MissingField(&'static str),

    #[error("unsupported dimension n = {0} for this operation")]
    UnsupportedDimension(u32),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
