use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("inhomogeneous element `{0}`")]
    Inhomogeneous(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A length that must be finite turned out infinite, which signals that a
    /// supposed system of parameters is not one.
    #[error("infinite length: {0}")]
    InfiniteLength(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("system of parameters search failed: {0}")]
    SopSearch(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
