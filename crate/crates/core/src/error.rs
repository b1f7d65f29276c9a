use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{0} is outside the domain of this formula")]
    Domain(&'static str),

    #[error("matrix exponential failed: {0}")]
    NumericFailure(&'static str),

    #[error("integrator step size underflow at t = {t} (h = {step})")]
    StepSizeUnderflow { t: f64, step: f64 },

    #[error("no sign change of the discriminant in kappa-window (0, {upper}]")]
    BoundaryNotFound { upper: f64 },

    #[error("at least {needed} points are required, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
