use thiserror::Error;

/// Errors raised by the solvers and bound evaluators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PullinError {
    #[error("{what} = {value} lies outside the domain [0, {end})")]
    Domain { what: &'static str, value: f64, end: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("shooting profile did not cross zero before r = {r_max}")]
    NoCrossing { r_max: f64 },

    #[error("integrator fault at r = {r}: {reason}")]
    IntegratorFault { r: f64, reason: String },

    #[error("could not bracket {what}")]
    BracketFailure { what: &'static str },

    #[error("quadrature did not converge (estimated error {error:e})")]
    Quadrature { error: f64 },

    #[error("lambda = {lambda} is beyond the pull-in voltage {lambda_star}")]
    BeyondPullIn { lambda: f64, lambda_star: f64 },

    #[error("radius {r} outside the sampled profile range [{lo}, {hi}]")]
    OutOfRange { r: f64, lo: f64, hi: f64 },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, PullinError>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: impl Into<String>) -> PullinError {
    PullinError::InvalidParameter {
        name,
        value,
        reason: reason.into(),
    }
}
