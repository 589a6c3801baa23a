use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// The CLI maps these onto three exit codes: usage errors ([`Error::is_usage`]),
/// resource exhaustion ([`Error::Budget`], reported as inconclusive) and contract
/// violations ([`Error::Contract`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("operands disagree: {0}")]
    Mismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("term {0} lies outside the basis")]
    OutsideBasis(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Usage(_)
                | Error::Parse { .. }
                | Error::Mismatch(_)
                | Error::Dimension { .. }
                | Error::OutsideBasis(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
