use thiserror::Error;

/// Errors raised by the library. Axiom violations are not errors; they are
/// reported through [`crate::axioms::AxiomReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("checksum mismatch: header says {expected}, content hashes to {actual}")]
    Checksum { expected: String, actual: String },

    /// An internal invariant between modules was broken, e.g. a chirotope
    /// computed from actual points is missing from an exhaustive catalog.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::Input(message.into()))
}
