use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TateError {
    #[error("multidegree length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("box overflow: {0}")]
    BoxOverflow(String),

    #[error("slice of dimension {dim} exceeds the budget {budget}")]
    BudgetExceeded { dim: usize, budget: usize },

    #[error("no sufficiently positive degree found: {0}")]
    NotSufficientlyPositive(String),

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("complex is not minimal: {0}")]
    NonMinimal(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, TateError>;
