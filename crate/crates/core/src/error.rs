use thiserror::Error;

use crate::poly::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(ParseError),

    /// Malformed line in a document; `line` and `column` are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Format { line: usize, column: usize, message: String },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input was well formed but failed a mathematical check.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A randomized construction never produced a certified generic choice.
    #[error("genericity not achieved after {attempts} attempts: {detail}")]
    Genericity { attempts: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
