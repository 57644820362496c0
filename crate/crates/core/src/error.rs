use thiserror::Error;

/// Errors raised while constructing or parsing domain objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("clause width k must be at least 1")]
    ZeroWidth,
    #[error("literal references variable {var} but the formula has only {n} variables")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("clause {clause} has {len} literals, expected {k}")]
    WrongClauseWidth { clause: usize, len: usize, k: usize },
    #[error("degree total {total} differs from k*m = {expected}")]
    DegreeTotalMismatch { total: u64, expected: u64 },
    #[error("no literal occurrences (k*m = 0); types are undefined")]
    NoOccurrenceMass,
    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl CoreError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        CoreError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
