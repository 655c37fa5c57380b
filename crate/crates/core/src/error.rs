use alloc::string::String;

/// Errors raised by constructions, realizations and searches.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid group specification: {0}")]
    Semantic(String),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: u128, bound: usize },
    #[error("search aborted after exceeding its time budget")]
    Timeout,
    #[error("no prime q = 1 (mod {p}) found below {cap}")]
    SearchBoundExceeded { p: u32, cap: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("presentation mismatch")]
    PresentationMismatch,
    #[error("element is not in the requested lower central term (nonzero degree-{degree} component)")]
    NotInLcsTerm { degree: usize },
    #[error("series is not a Lie element (degree {degree} is outside the Hall span)")]
    NotLie { degree: usize },
    #[error("endomorphism does not preserve the ideal")]
    IdealNotPreserved,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("automorphism does not normalize the given subgroup")]
    NotNormalizing,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
