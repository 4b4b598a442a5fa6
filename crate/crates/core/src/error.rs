use std::fmt;

use thiserror::Error;

/// Position-annotated failure from the scalar / polynomial parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where parsing stopped.
    pub offset: usize,
    /// Human-readable description of what was expected at `offset`.
    pub expected: String,
}

impl ParseError {
    pub fn new(offset: usize, expected: impl Into<String>) -> Self {
        Self {
            offset,
            expected: expected.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}", self.offset, self.expected)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("scalar kind mismatch: {0}")]
    ScalarKindMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("root finder did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("similarity transform is ill-conditioned (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("parameter out of domain: {0}")]
    ParamOutOfDomain(String),
    #[error("malformed matrix file, line {line}: {reason}")]
    Format { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
