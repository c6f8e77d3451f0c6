use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Factorization needed more work units than the configured budget.
    #[error("factorization of {value} exceeded the work budget of {budget} units")]
    BudgetExceeded { value: String, budget: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The rank scan ran past `6n` without finding a zero. Cannot happen for a
    /// correct Fibonacci recurrence.
    #[error("internal error: no m <= {bound} with {n} | F(m)")]
    RankScanExhausted { n: u64, bound: u64 },

    #[error("summatory table has no entry at {0}")]
    MissingTableEntry(u64),

    #[error("division by zero: {name}({at}) = 0")]
    DivisionByZero { name: String, at: String },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
