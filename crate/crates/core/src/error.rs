use thiserror::Error;

/// Everything that can go wrong inside the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension d = {0} (need d >= 1)")]
    InvalidDimension(usize),
    #[error("{0} is not supported in dimension {1}")]
    Unsupported(&'static str, usize),
    #[error("parameter out of range: {0}")]
    Domain(&'static str),
    #[error("invalid 1D pair ({0},{1}); need 0 <= i < j <= 3")]
    InvalidPair(u8, u8),
    #[error("spectrum has {have} values below threshold {z} and cannot be extended")]
    InsufficientSpectrum { have: usize, z: f64 },
    #[error("spectrum values must be finite, nonnegative and nondecreasing (index {0})")]
    Unordered(usize),
    #[error("k = {k} is below the admissible threshold {min}")]
    Threshold { k: usize, min: f64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("quadrature error estimate {estimate:e} exceeds {limit:e}; increase the resolution")]
    Resolution { estimate: f64, limit: f64 },
    #[error("matrix is not symmetric (entry {0},{1})")]
    NotSymmetric(usize, usize),
    #[error("dimension {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("evaluation error: {0}")]
    Eval(&'static str),
    #[error("internal numerical failure: {0}")]
    Internal(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
