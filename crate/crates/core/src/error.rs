use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller handed in something that breaks an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An exhaustive search was asked to run above its configured vertex bound.
    #[error("{what} on {actual} vertices exceeds the configured limit of {limit}")]
    ScaleLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    /// A guarantee that should hold by construction did not.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
