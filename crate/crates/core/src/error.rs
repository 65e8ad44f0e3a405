use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into two families that the CLI maps to distinct exit codes:
/// domain/validation problems (bad parameters, infeasible bounds) and
/// capability limits (inputs beyond what an algorithm is sized for).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected} nodes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("N = {requested} is below N_min = {required}; the probability bound is not certified")]
    BelowNMin { requested: u64, required: u64 },

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for this error: 2 for domain/validation, 3 for capability.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capability(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
