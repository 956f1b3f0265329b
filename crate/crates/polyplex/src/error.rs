use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes of
/// the public operations; none of them are recoverable mid-computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("matrix too large: {0}")]
    TooLarge(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("order must be 2: {0}")]
    Order(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("state error: {0}")]
    State(String),

    #[error("verification failed at clause {clause}: {detail}")]
    Verification { clause: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
