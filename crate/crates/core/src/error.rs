use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameter outside the range an operation supports at all.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Parameter is valid but the job is too large without an explicit opt-in.
    #[error("not feasible: {0}")]
    Infeasible(String),

    #[error("graphs are incomparable: side sizes {0} and {1}")]
    Incomparable(usize, usize),

    /// Malformed matrix, grid, family or file contents.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrices {0} and {1} of the family are not disjoint")]
    NotDisjoint(usize, usize),

    /// Two routes that must agree did not, or a quantity that must be an
    /// integer (or even) was not.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("sampler exhausted its budget after {restarts} restarts")]
    BudgetExhausted { restarts: u32 },
}
