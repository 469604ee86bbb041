use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible domain: no pair with ‖x‖+‖y‖ ≥ {d} inside radius {radius_max}")]
    InfeasibleDomain { d: f64, radius_max: f64 },

    #[error("undefined value: {0}")]
    UndefinedValue(String),

    #[error("non-finite map value at iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error("map `{0}` is tabulated; extraction needs a callable map")]
    TabulatedMap(String),

    #[error("profile has {got} shells, at least {min} required")]
    TooFewShells { got: usize, min: usize },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(LabError::DimensionMismatch { expected, got })
    }
}
