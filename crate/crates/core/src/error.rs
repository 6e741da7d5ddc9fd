//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain of an operation (wrong degree range,
    /// empty profile, composite modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input violating a range precondition; the message names the bound.
    #[error("range error: {0}")]
    Range(String),

    /// A structural self-check failed (cancellation that must hold
    /// symbolically, a certificate that could not be established).
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn range(msg: impl Into<String>) -> Error {
    Error::Range(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
