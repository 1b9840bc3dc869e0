use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two classes: problems with the input (bad shapes,
/// degenerate configurations, malformed data) and internal inconsistencies,
/// where an identity that must hold for valid input failed. The CLI maps the
/// two classes to different exit codes via [`Error::is_inconsistency`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is singular")]
    Singular,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("points not in general position; offending subset {witness:?}")]
    NotGeneralPosition { witness: Vec<usize> },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True when the error signals a failed identity rather than bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
