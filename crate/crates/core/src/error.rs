use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("exponent length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("divisor set is empty")]
    EmptyDivisors,

    #[error("divisor {0} is zero")]
    ZeroDivisor(usize),

    #[error("ideal status unknown: {0}")]
    UnknownIdeal(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("element is not central: {0}")]
    NotCentral(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
