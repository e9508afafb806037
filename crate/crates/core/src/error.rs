//! Error type shared by every module.
//!
//! The variants partition failures the way the command-line front end needs
//! them: malformed user input, mathematically unsupported requests, and
//! broken internal invariants.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input; `pos` is 1-based.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A precondition on the mathematical input is violated or the request
    /// falls outside the supported class (degenerate polynomial, unbounded
    /// enumeration, missing knowledge-base entry, ...).
    #[error("{0}")]
    Unsupported(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
