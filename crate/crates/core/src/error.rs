use thiserror::Error;

use crate::trace::IterationTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A rule was applied outside the range where its hypotheses hold.
    #[error("{rule}: {detail}")]
    Domain { rule: &'static str, detail: String },

    #[error("arithmetic mixes incompatible radicands sqrt({0}) and sqrt({1})")]
    MixedRadicand(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("undefined operation on infinity: {0}")]
    InfiniteArithmetic(&'static str),

    #[error("value {0} is not a positive exponent")]
    NonPositive(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("no terminal case after {steps} steps")]
    MaxSteps {
        steps: usize,
        partial: Box<IterationTrace>,
    },

    #[error(transparent)]
    Scheme(#[from] crate::dsl::SchemeError),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(rule: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            rule,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
