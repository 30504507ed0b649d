use thiserror::Error;

/// Errors raised by the operator library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter or point lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid construction parameters (grid sizes, exponents, truncation degree).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Two objects that must share a grid (or circle) do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A linear system is too ill-conditioned to trust.
    #[error("ill-conditioned Gram matrix: condition estimate {cond:.3e} exceeds cap {cap:.3e}")]
    IllConditioned { cond: f64, cap: f64 },

    /// A numerical routine failed (non-positive pivot, eigensolver breakdown, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A dense matrix would exceed the configured memory guard.
    #[error("dense assembly of {nodes} nodes exceeds the guard of {limit}")]
    TooLarge { nodes: usize, limit: usize },

    /// Configuration file or flag problems.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
