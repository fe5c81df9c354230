use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group mismatch: operands live in different groups")]
    GroupMismatch,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("assembled coefficient at {element} is not rational: {value}")]
    NotRational { element: String, value: String },
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("linear map is not injective (rank {rank} < {dim})")]
    NotInjective { rank: usize, dim: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds budget {budget}")]
    OrderBudget { order: usize, budget: usize },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integrality violated: {0}")]
    Integrality(String),
    #[error("l-adic precision {precision} too small: {detail}")]
    Precision { precision: u32, detail: String },
    #[error("division by zero: {0}")]
    ZeroDivision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
