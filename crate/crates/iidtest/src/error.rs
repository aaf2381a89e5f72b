//! Crate-wide error type.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A model or test parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input series shorter than an operation requires.
    #[error("series too short: need at least {needed} observations, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    /// A NaN or infinity where a finite value is required.
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    /// Requested lag exceeds what the sample length supports.
    #[error("lag {lag} out of range: series of length {n} supports lags up to {max}")]
    LagOutOfRange { lag: usize, n: usize, max: usize },

    /// A transformed column is constant, so its correlations are undefined.
    #[error("degenerate series: transformed column '{function}' has zero variance")]
    DegenerateVariance { function: String },

    /// Two inputs that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Matrix operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An operation requiring a symmetric matrix received an asymmetric one.
    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// Eigenvalue below tolerance where positive definiteness is required.
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    /// The estimated contemporaneous matrix cannot be inverted for whitening.
    #[error(
        "whitening failed: contemporaneous matrix is not positive definite \
         (smallest eigenvalue {min_eigenvalue:e})"
    )]
    WhiteningFailure { min_eigenvalue: f64 },

    /// A probability argument outside the open unit interval.
    #[error("probability must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(f64),

    /// Negative argument to a distribution function defined on [0, inf).
    #[error("distribution argument must be non-negative, got {0}")]
    NegativeArgument(f64),

    /// Plain (unwhitened) variants assume the transform family is uncorrelated.
    #[error(
        "function family is not declared uncorrelated; \
         use a whitened variant or a family with zero cross-correlation"
    )]
    RequiresUncorrelated,

    /// Malformed numeric data in an input file.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Invalid experiment configuration, annotated with the offending field.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
