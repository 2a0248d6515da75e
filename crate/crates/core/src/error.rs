use std::fmt;

use thiserror::Error;

use crate::rational::Rational;
use crate::seq::Offset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation needs at least {needed} terms, sequence has {have}")]
    InsufficientTerms { needed: usize, have: usize },

    #[error("expected a sequence with offset {expected}, got offset {found}")]
    OffsetMismatch { expected: Offset, found: Offset },

    #[error("term at index {index} is outside the domain: {reason}")]
    Domain { index: usize, reason: String },

    #[error("non-integral value {value} at index {index}")]
    NonIntegral { index: usize, value: Rational },

    #[error("power series precondition violated: {0}")]
    Series(&'static str),

    #[error("transform is not affine in the term at index {index}")]
    Nonlinear { index: usize },

    #[error("eigen equation is singular at index {index}")]
    Singular { index: usize },

    #[error("eigen equation is inconsistent at index {index}")]
    Inconsistent { index: usize },

    #[error("{0} has no inverse")]
    NotInvertible(String),

    #[error("expression `{0}` has no supported eigen form")]
    UnsupportedEigen(String),

    #[error("factor {factor} ({name}): {source}")]
    InFactor {
        factor: usize,
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error("no cycle found within {0} iterations")]
    NoCycle(usize),

    #[error("prefix did not stabilise within {0} iterations")]
    NoConvergence(usize),

    #[error("orbit left the domain at iterate {iterate}: {source}")]
    OrbitDomain {
        iterate: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("search exhausted below cap {cap}; deepest consistent prefix: {deepest}")]
    SearchExhausted { cap: u64, deepest: String },

    #[error("unknown catalog id `{0}`")]
    UnknownId(String),

    #[error("malformed catalog record on line {line}: {reason}")]
    CatalogFormat { line: usize, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error with a 1-based character position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}
