use thiserror::Error;

/// Errors raised at the boundary of every operation.
///
/// `Input` covers malformed or inconsistent input (duplicate labels,
/// undeclared vertices, parse failures) and carries a JSON-pointer-like
/// location. `Domain` covers well-formed input that violates an operation's
/// precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error at {pointer}: {message}")]
    Input { pointer: String, message: String },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn input(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
