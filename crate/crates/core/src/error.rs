use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A lemma hypothesis checked at runtime does not hold for the input.
    #[error("hypothesis violated: {reason} (offending word: {witness})")]
    HypothesisViolated { reason: String, witness: String },

    /// A configured depth or symbol budget was exhausted.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("verification failed: {item}: {counterexample}")]
    VerificationFailed { item: String, counterexample: String },

    /// A post-condition that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn hypothesis(reason: impl Into<String>, witness: impl ToString) -> Self {
        Error::HypothesisViolated {
            reason: reason.into(),
            witness: witness.to_string(),
        }
    }
}
