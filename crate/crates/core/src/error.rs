use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix")]
    Singular,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid multiplicity sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not negative definite")]
    NotNegativeDefinite,

    #[error("not star-shaped: {0}")]
    NotStarShaped(String),

    #[error("not minimal: {0}")]
    NotMinimal(String),

    #[error("rejected input: {0}")]
    Validation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("serialization: {0}")]
    Serde(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
