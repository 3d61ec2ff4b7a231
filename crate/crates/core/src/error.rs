use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation at q = 0 of a polynomial with negative powers")]
    ZeroBase,
    #[error("zero point in a Schur evaluation with negative parts")]
    ZeroPoint,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },
    #[error("not a signature (parts must weakly decrease): {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("not a partition: {0:?}")]
    NotPartition(Vec<i64>),
    #[error("not a probability vector: {0}")]
    NotProbability(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("window too large: {vertices} vertices exceeds cap {cap}")]
    WindowTooLarge { vertices: usize, cap: usize },
    #[error("walk reached a vertex of zero mass at level {0}")]
    ZeroMass(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported for this graph: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
