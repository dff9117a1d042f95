use thiserror::Error;
use zakframes_group::GroupError;
use zakframes_oracle::OracleError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Oracle(#[from] OracleError),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("families have sizes {0} and {1}, expected equal")]
    FamilySizeMismatch(usize, usize),

    #[error("generator family is empty")]
    EmptyFamily,

    #[error("bracket not bounded below on the support: |value| = {magnitude:.3e} at fiber {alpha}")]
    NotBoundedBelow { alpha: usize, magnitude: f64 },

    #[error("multiplier is not constant on the coset of element {witness_a} (differs at {witness_b})")]
    NotPeriodic { witness_a: usize, witness_b: usize },

    #[error("invalid tolerance {value}: {what} must be positive")]
    InvalidTolerance { what: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
