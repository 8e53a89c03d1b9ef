use thiserror::Error;

/// Errors produced by state construction, invariant evaluation and I/O.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} amplitudes for {n} qubits, got {got}")]
    LengthMismatch { n: usize, expected: usize, got: usize },

    #[error("state vector is identically zero")]
    AllZero,

    #[error("qubit count {n} is outside the supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("index {i} out of range for n = {n} (valid: 0..={max})")]
    IndexOutOfRange { n: usize, i: usize, max: usize },

    #[error("{op} requires {requirement}, got n = {n}")]
    Parity {
        op: &'static str,
        requirement: &'static str,
        n: usize,
    },

    #[error("{op} requires at least {min} qubits, got {n}")]
    TooFewQubits { op: &'static str, min: usize, n: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("F-criteria enumeration is limited to n <= {max} qubits (got {n})")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
