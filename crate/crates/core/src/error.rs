use thiserror::Error;

/// Errors raised by the engine. Diagnostic reports (Jacobi violations,
/// relation failures) are not errors; they travel in report structs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mismatched dimensions or ambient spaces.
    #[error("configuration error: {0}")]
    Config(String),
    /// Input that parses but is not a valid Lie algebra, structure or metric.
    #[error("validation error: {0}")]
    Validation(String),
    /// `Y ⊆ X` failed before a quotient was taken.
    #[error("containment error: {0}")]
    Containment(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate deformation: {0}")]
    DegenerateDeformation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Usage(_) => 64,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
