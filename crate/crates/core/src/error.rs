use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series could not be summed to the requested tolerance.
    #[error("no convergence after {terms} terms (tail bound {tail_bound:e} > tolerance {tol:e})")]
    NonConvergence { terms: u64, tail_bound: f64, tol: f64 },

    /// A denominator 1 + μ(n − l) of the defining series vanishes.
    #[error("pole: 1 + mu*(n - l) vanishes for mu = {mu}, n = {n}, l = {l}")]
    Pole { mu: f64, n: f64, l: u32 },

    /// An exact integer does not fit the requested width.
    #[error("integer overflow computing {0}")]
    Overflow(String),

    /// An index is beyond a precomputed table.
    #[error("index {index} beyond table bound {bound}")]
    Range { index: usize, bound: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
