use thiserror::Error;

pub type Result<T, E = DiameterError> = std::result::Result<T, E>;

/// Errors raised by the geometric routines and diameter algorithms.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum DiameterError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("coordinate {axis} of point {index} is not finite")]
    NonFinite { index: usize, axis: usize },

    #[error("dimension must be at least {min}, got {dim}")]
    InvalidDimension { dim: usize, min: usize },

    #[error("invalid approximation parameter eps = {eps}: {reason}")]
    InvalidEps { eps: f64, reason: &'static str },

    #[error("node {0} holds only coordinate-identical points and cannot be split")]
    DegenerateLeaf(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigen-decomposition of the covariance matrix failed")]
    EigenFailure,
}

/// Checks `eps >= 0` (and finite).
pub(crate) fn check_eps_nonneg(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps < 0.0 {
        return Err(DiameterError::InvalidEps { eps, reason: "must be finite and >= 0" });
    }
    Ok(())
}

/// Checks `eps > 0` (and finite).
pub(crate) fn check_eps_positive(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(DiameterError::InvalidEps { eps, reason: "must be finite and > 0" });
    }
    Ok(())
}
