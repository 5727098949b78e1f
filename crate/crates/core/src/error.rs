use alloc::string::String;
use core::fmt;

/// Errors produced by the arithmetic, sieve, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand scale does not match the context's working digits.
    ScaleMismatch { expected: u32, found: u32 },
    DivisionByZero,
    /// Argument outside the mathematical domain of the operation.
    Domain(&'static str),
    /// Argument outside the supported range (exp cap, power sign).
    Range(&'static str),
    /// Weight table does not reach the index the computation needs.
    TableTooSmall { required: usize, limit: usize },
    /// Allocation for a sieve of the requested size would not fit.
    Resource { requested_bytes: u128 },
    /// Input text could not be parsed.
    Parse(String),
    UnknownConstant(String),
    UnknownIdentity(String),
    /// Degrees of two series under comparison differ.
    DegreeMismatch { left: usize, right: usize },
    /// Accumulated truncation plus rounding error would exceed the target.
    PrecisionBudget,
    InvalidContext(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ScaleMismatch { expected, found } => {
                write!(f, "scale mismatch: expected {expected}, found {found}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::TableTooSmall { required, limit } => write!(
                f,
                "arithmetic function table too small: need limit {required}, have {limit}"
            ),
            Error::Resource { requested_bytes } => {
                write!(f, "sieve allocation of {requested_bytes} bytes is not possible")
            }
            Error::Parse(s) => write!(f, "cannot parse {s:?}"),
            Error::UnknownConstant(s) => write!(f, "unknown constant {s:?}"),
            Error::UnknownIdentity(s) => write!(f, "unknown identity {s:?}"),
            Error::DegreeMismatch { left, right } => {
                write!(f, "series degree mismatch: {left} vs {right}")
            }
            Error::PrecisionBudget => {
                f.write_str("error budget exceeds requested digits; raise guard digits")
            }
            Error::InvalidContext(msg) => write!(f, "invalid precision context: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
