use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while evaluating a differintegral or a zeta value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole: {z} is within {radius:e} of a non-positive integer")]
    Pole { z: Complex64, radius: f64 },

    #[error("branch cut: {base} lies on (-inf, 0]")]
    BranchCut { base: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tolerance not met: error estimate {achieved:e} exceeds target {requested:e} after {subdivisions} subdivisions")]
    ToleranceNotMet {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    #[error("divergence suspected: {0}")]
    DivergenceSuspected(String),

    #[error("series did not converge: {terms} terms would be needed (cap {cap})")]
    Nonconvergence { terms: f64, cap: usize },

    #[error("extrapolation unstable: {0}")]
    ExtrapolationUnstable(String),

    #[error("non-finite result in {0}")]
    NonFinite(&'static str),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the inputs lying outside an operation's domain,
    /// as opposed to numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::BranchCut { .. } | Error::Domain(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
