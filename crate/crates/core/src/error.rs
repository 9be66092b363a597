use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("zero has infinite valuation")]
    InfiniteValuation,
    #[error("not a unit: {0} is divisible by p")]
    NotAUnit(i128),
    #[error("multiplier valuation mismatch: expected {expected}, found {found}")]
    MultiplierValuationMismatch { expected: u32, found: u32 },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("N_r not found below cap {0}")]
    ThresholdNotFound(u32),
    #[error("no N_r exists: multiplier is a root of unity")]
    NoThreshold,
    #[error("excluded multiplier: {0}")]
    ExcludedMultiplier(String),
    #[error("{0}")]
    WrongCase(String),
    #[error("p^{level} does not fit in 63 bits for p = {p}")]
    LevelOutOfRange { p: u64, level: u32 },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotOddPrime(_) => "not_odd_prime",
            Error::InfiniteValuation => "infinite_valuation",
            Error::NotAUnit(_) => "not_a_unit",
            Error::MultiplierValuationMismatch { .. } => "valuation_mismatch",
            Error::InsufficientPrecision { .. } => "insufficient_precision",
            Error::ThresholdNotFound(_) => "threshold_not_found",
            Error::NoThreshold => "no_threshold",
            Error::ExcludedMultiplier(_) => "excluded_multiplier",
            Error::WrongCase(_) => "wrong_case",
            Error::LevelOutOfRange { .. } => "level_out_of_range",
            Error::BasisMismatch(_) => "basis_mismatch",
            Error::Parse(_) => "parse_error",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
