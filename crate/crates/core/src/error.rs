use thiserror::Error;

/// Failures reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0} is not an element of the monoid")]
    NotMember(String),
    #[error("search budget of {limit} nodes exhausted during {context}")]
    Budget { limit: u64, context: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("need {required} components, only {available} available")]
    InsufficientComponents { required: usize, available: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
