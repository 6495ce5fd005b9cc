use thiserror::Error;

/// Errors raised by the decision calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument left the real domain of a function (e.g. a loss beyond ruin).
    #[error("domain error: {0}")]
    Domain(String),
    /// A sense of truth or probability outside its admissible interval.
    #[error("range error: {0}")]
    Range(String),
    /// A parameter set that breaks the invariants of its family.
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("probability mass {0} exceeds 1")]
    ProbabilityMass(f64),
    /// A comparison mode that is undefined for the given hypotheses.
    #[error("mode error: {0}")]
    Mode(String),
    /// The crossover search found more than one sign change.
    #[error("crossover error: {0}")]
    Crossing(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn range(msg: impl Into<String>) -> Error {
    Error::Range(msg.into())
}
