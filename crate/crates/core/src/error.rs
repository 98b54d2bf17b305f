use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid window {0:?}: entries must sum to 6 and have distinct residues mod 3")]
    InvalidWindow([i64; 3]),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("word length {len} exceeds the enumeration bound {bound}")]
    BoundExceeded { len: usize, bound: usize },

    #[error("length mismatch: word has {word} letters but {bits} bits were given")]
    LengthMismatch { word: usize, bits: usize },

    #[error("element {0} matches no family")]
    Unclassified(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
