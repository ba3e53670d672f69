use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (poles, negative radicands, bad ranges).
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural precondition failed, e.g. an operator leaks out of the polynomial subspace.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("no null vector: {0}")]
    NoNullVector(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
