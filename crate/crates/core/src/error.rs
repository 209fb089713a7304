use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the routine.
    #[error("domain error in {routine}: {detail}")]
    Domain {
        routine: &'static str,
        detail: String,
    },

    /// An iterative method ran out of iterations before meeting its tolerance.
    #[error("{routine} failed to converge after {iterations} iterations")]
    Convergence {
        routine: &'static str,
        iterations: usize,
    },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: {intervals} intervals, estimated error {est_error:e}, value {value:e}")]
    Quadrature {
        intervals: usize,
        est_error: f64,
        value: f64,
    },

    /// The input cannot be handled by this routine.
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        routine,
        detail: detail.into(),
    }
}
