use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    /// Input data violates an invariant (malformed polynomial, bad index, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The request is one of the documented mathematical exclusions
    /// (alpha = 1/2 for the constant, integer alpha for the bounds).
    #[error("excluded case: {0}")]
    Excluded(String),

    /// Loss of positive definiteness inside the Levinson recursion.
    #[error("Levinson recursion broke down at step {step} (reflection coefficient {reflection})")]
    Breakdown { step: usize, reflection: f64 },

    /// Spectral factorization could not produce an outer factor.
    #[error("spectral factorization failed: {0}")]
    Factorization(String),

    /// An iterative method hit its iteration cap.
    #[error("no convergence after {iterations} iterations (last iterate {last})")]
    NonConvergence { iterations: usize, last: f64 },

    /// The recursion lift needs P(1) != 0.
    #[error("singular lift: P(1) = {0}")]
    SingularLift(f64),
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { func, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
