use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("distribution does not sum to 1 (sum = {0})")]
    NotNormalized(f64),

    #[error("channel row {row} is not a probability vector (sum = {sum})")]
    InvalidChannel { row: usize, sum: f64 },

    #[error("input alphabet of size {0} is too large for simplex search (max 4)")]
    AlphabetTooLarge(usize),

    #[error("list size {list} out of range 1..={codewords}")]
    ListSize { list: usize, codewords: usize },

    #[error("block length {0} is not supported (1..=64)")]
    BlockLength(usize),

    #[error("exhaustive enumeration over 2^{n} words exceeds the cap of 2^{max}")]
    Enumeration { n: usize, max: usize },

    #[error("observation length {0} out of range 2..=22")]
    ObservationLength(usize),

    #[error("invalid code fixture at line {line}: {message}")]
    Fixture { line: usize, message: String },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("no sign change on [{lo}, {hi}]: internal inconsistency")]
    Bracket { lo: f64, hi: f64 },

    #[error("invalid sweep range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
