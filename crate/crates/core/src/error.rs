use thiserror::Error;

use crate::int::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input that does not match one of the grammars. `pos` is a byte
    /// offset into the input.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid factor {factor}: {reason}")]
    InvalidFactor { factor: String, reason: String },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid letter {0}")]
    InvalidLetter(String),

    #[error("classes live in different contexts")]
    ContextMismatch,

    #[error("rank mismatch: expected r = {expected}, got r = {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("not an automorphism candidate: abelianization has determinant {det}")]
    NotInvertible { det: Int },

    #[error("invalid JSON: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
