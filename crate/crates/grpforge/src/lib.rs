//! Command-line front end for `grpforge-core`: runs constructions and
//! verification suites and renders their reports as text or JSON.

pub mod cache;
pub mod cli;
pub mod report;
pub mod suites;

use grpforge_core::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Anything that stops a command before it can produce a verdict.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// A resource limit, with advice on how to lift it.
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Resource(_) => EXIT_RESOURCE,
            Failure::Io(_) => EXIT_FAIL,
            Failure::Core(e) => match e {
                Error::Syntax { .. }
                | Error::Semantic(_)
                | Error::NotPrime(_)
                | Error::InvalidAction(_)
                | Error::Precondition(_)
                | Error::Shape(_) => EXIT_USAGE,
                Error::BoundExceeded { .. } | Error::Timeout | Error::SearchBoundExceeded { .. } => EXIT_RESOURCE,
                Error::PresentationMismatch
                | Error::NotInLcsTerm { .. }
                | Error::NotLie { .. }
                | Error::IdealNotPreserved
                | Error::NotNormalizing => EXIT_FAIL,
            },
        }
    }
}
