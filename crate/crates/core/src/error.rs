use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),

    #[error("lambda must not equal 1")]
    LambdaOne,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient history: grid point {missing} is required but the signal starts at {start}")]
    InsufficientHistory { missing: i64, start: i64 },

    #[error("horizon too short: need at least {needed} samples, have {have}")]
    HorizonTooShort { needed: usize, have: usize },

    #[error("series does not converge for lambda = {0}; use the recursive solver")]
    SeriesNotConvergent(f64),

    #[error("series did not settle within {cap} terms")]
    NonConvergedAtCap { cap: usize },

    #[error("transform pole: s^alpha equals lambda at the requested point")]
    TransformPole,

    #[error("scenario parse error at line {line}: {msg}")]
    ScenarioParse { line: usize, msg: String },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    /// Process exit code used by the CLI: 2 for input/domain errors,
    /// 3 for numeric non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergedAtCap { .. } => 3,
            _ => 2,
        }
    }
}
