use thiserror::Error;

/// Errors raised by the library. CLI front ends map `Domain` and
/// `Overflow` to usage errors and `Inconsistent` to an internal failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic overflow in {0}; reduce the index or discriminant bound")]
    Overflow(&'static str),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
