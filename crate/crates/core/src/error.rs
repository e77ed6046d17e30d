use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit: {what} needs {needed} elements, limit is {limit}")]
    ResourceLimit {
        what: String,
        needed: u128,
        limit: usize,
    },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("no generating character: {0}")]
    NotFrobenius(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}
