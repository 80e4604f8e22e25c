use thiserror::Error;

/// Errors raised by the core library.
///
/// Every variant describes a caller mistake (wrong dimensions, empty inputs,
/// invalid parameters) or data the operation cannot consume.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown problem `{0}` (known: dtlz1, dtlz2, dtlz5, dtlz7, zdt2)")]
    UnknownProblem(String),
    #[error("decision vectors required: {0}")]
    DecisionRequired(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
