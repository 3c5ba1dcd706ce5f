use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable order error at position {pos}: expected x{expected}, found x{found}")]
    VariableOrder {
        pos: usize,
        expected: usize,
        found: usize,
    },

    #[error("not a left depth sequence: {0:?}")]
    InvalidDepthSequence(Vec<u32>),

    #[error("leaf counts differ: {left} vs {right}")]
    LeafCountMismatch { left: usize, right: usize },

    #[error("n = {n} is outside the enumeration guard 1..={max}")]
    GuardExceeded { n: usize, max: usize },

    #[error("probability must lie strictly between 0 and 1")]
    ProbabilityOutOfRange,

    #[error("leaf probabilities are not realizable by a binary tree: {0}")]
    NotRealizable(String),

    #[error("operation needs a grid of dimension {expected}, got dimension {found}")]
    WrongDimension { expected: u8, found: u8 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid quasigroup: {0}")]
    InvalidQuasigroup(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("assignment has {found} entries, term has {expected} variables")]
    AssignmentLength { expected: usize, found: usize },

    #[error("brute force needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal consistency check failed: {0}")]
    InternalMismatch(String),
}
