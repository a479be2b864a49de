use thiserror::Error;

/// Errors shared across the crate. Semi-decision outcomes (`Unknown`,
/// `Exhausted`) are values, not errors; only genuine failures land here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("closure cap exceeded: {found} elements found, cap was {cap}")]
    CapExceeded { found: usize, cap: usize },

    #[error("rewriting step cap exceeded after {0} steps")]
    StepCapExceeded(usize),

    #[error("system is not length-reducing; a step cap is required")]
    NotTerminating,

    #[error("duplicate element: {0}")]
    DuplicateElement(String),

    #[error("equality undecided within the given caps: {0}")]
    UndecidedEquality(String),

    #[error("word too long: {word} has length {len}, limit {limit}")]
    WordTooLong {
        word: String,
        len: usize,
        limit: usize,
    },

    #[error("universe mismatch: {0} vs {1}")]
    UniverseMismatch(usize, usize),

    #[error("empty preimage for {0}")]
    EmptyPreimage(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("corrupt certificate: {0}")]
    CorruptCertificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
