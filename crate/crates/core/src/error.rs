use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("partition mismatch: {left:?} vs {right:?}")]
    PartitionMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("case mismatch: expected {expected}, got {found}")]
    CaseMismatch { expected: String, found: String },

    #[error("index {index} out of range (valid: 1..{bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("parity mismatch: case {case} requires {requirement}, got d = {d}")]
    ParityMismatch {
        case: String,
        requirement: &'static str,
        d: usize,
    },

    #[error("enumeration budget exceeded: {estimate} flags requested, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
