use thiserror::Error;

/// Errors raised while constructing or combining group-level structures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("invalid group: {reason}")]
    InvalidGroup { reason: String },

    #[error("group of order {size} exceeds the configured cap of {cap}")]
    SizeLimit { size: usize, cap: usize },

    #[error("subgroup is not abelian: elements {a} and {b} do not commute")]
    NotAbelian { a: usize, b: usize },

    #[error("stride {stride} does not divide order {order} in factor {factor}")]
    InvalidStride {
        factor: usize,
        stride: usize,
        order: usize,
    },

    #[error("element index {index} out of range for group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("operation requires an abelian group")]
    AbelianRequired,

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
