use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive quadrature did not reach its tolerance within its budget.
    #[error("quadrature failure: estimated error {error:.3e} exceeds tolerance {tolerance:.3e} ({context})")]
    Quadrature {
        error: f64,
        tolerance: f64,
        context: &'static str,
    },

    /// The Bernoulli profile could not be truncated below the requested tail bound.
    #[error("truncation failure: tail bound {tail_bound:.3e} still above {epsilon:.3e} after {terms} terms")]
    Truncation {
        terms: usize,
        tail_bound: f64,
        epsilon: f64,
    },

    /// Two independent evaluations of the same quantity disagree.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
