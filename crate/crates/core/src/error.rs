use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vote is not a permutation of 0..{m}: {detail}")]
    NotAPermutation { m: usize, detail: String },
    #[error("candidate {candidate} out of range for {m} candidates")]
    CandidateOutOfRange { candidate: usize, m: usize },
    #[error("{what} mismatch: {left} vs {right}")]
    DimensionMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("divisibility condition violated: {0}")]
    Divisibility(String),
    #[error("{what} requires {limit_desc}, got {got}")]
    GuardExceeded {
        what: &'static str,
        limit_desc: String,
        got: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vectors have different sums ({left} vs {right})")]
    SumMismatch { left: String, right: String },
    #[error("negative entry {0} where a nonnegative vector is required")]
    NegativeEntry(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::GuardExceeded {
            what,
            limit_desc: format!("at most {limit}"),
            got,
        })
    } else {
        Ok(())
    }
}
