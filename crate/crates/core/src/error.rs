use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configured resource cap (ground-set size, group order, state count) was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A state that the underlying theory rules out was reached. Always a bug
    /// or a genuine discrepancy with the theory, never a user error.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}
