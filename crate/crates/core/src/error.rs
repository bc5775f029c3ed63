use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested family, rank or size is outside what is implemented.
    #[error("unsupported: {0}")]
    Capability(String),
    /// An enumeration or table grew past its configured cap.
    #[error("resource cap exceeded: {what} would need more than {cap}")]
    Resource { what: String, cap: usize },
    /// A precondition on the inputs was violated.
    #[error("contract violated: {0}")]
    Contract(String),
    /// A bounded search ran out of candidates.
    #[error("search exhausted: {0}")]
    Exhaustion(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }
}
