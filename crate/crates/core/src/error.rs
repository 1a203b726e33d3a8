use thiserror::Error;

/// Errors produced by the library.
///
/// Every fallible operation returns this type; `ResourceCap` is the only
/// variant that signals an aborted computation rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("index {index} out of range for domain of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("reflexivity violated at relation {relation}, row {row}")]
    NotReflexive { relation: usize, row: usize },

    #[error("relation {relation} is tagged as a linear order but is not one: {reason}")]
    NotLinearOrder { relation: usize, reason: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("label {label} out of range for poset of size {size}")]
    LabelOutOfRange { label: usize, size: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("empty structure where a non-empty one is required")]
    EmptyStructure,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a non-zero constant term where zero is required")]
    NonZeroConstantTerm,

    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,

    #[error("series has non-zero coefficients below x^{min_valuation}")]
    LowValuation { min_valuation: usize },

    #[error("generator set is not hereditary: {0}")]
    NotHereditary(String),

    #[error("structure is not a member of the sum-closure")]
    NotInClosure,

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
