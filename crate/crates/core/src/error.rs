use thiserror::Error;

/// Errors raised by group construction, field setup and the cohomology
/// pipelines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order exceeds the configured cap of {cap} elements")]
    OrderCapExceeded { cap: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("element {0} is not central")]
    NotCentral(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid twist field: gcd(p = {p}, m = {m}) != 1")]
    InvalidTwistField { p: u64, m: u64 },

    #[error("field of order {p}^{degree} is too large for table arithmetic")]
    FieldTooLarge { p: u64, degree: u32 },

    #[error("algebra dimension {n} exceeds the oracle cap {cap}; use the decomposition path")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("extension validation failed: {0}")]
    Validation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
