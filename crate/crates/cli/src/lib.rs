//! File formats, weight selection, verification suites and reports for the
//! `twistkh` command.

pub mod expr;
pub mod pd;
pub mod report;
pub mod run;
pub mod verify;

pub use pd::ParseError;

/// Everything that makes a run exit with status 2, plus internal failures.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Diagram(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}
