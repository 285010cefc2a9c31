use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad table shape, out-of-range index, parse failure.
    #[error("input error: {0}")]
    Input(String),

    /// Well-formed input that does not satisfy an operation's hypothesis.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A named axiom of a construction fails; `witness` describes where.
    #[error("precondition {axiom} violated: {witness}")]
    Precondition { axiom: String, witness: String },

    #[error("instance of size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// A proved statement failed on a concrete instance. This always points
    /// at a bug in the implementation.
    #[error("theorem violation ({theorem}): {detail}")]
    TheoremViolation { theorem: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn violation(theorem: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            theorem: theorem.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}
