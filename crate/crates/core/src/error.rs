use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource cap exceeded: {what} needs {required}, cap is {cap}")]
    CapExceeded { what: &'static str, required: u128, cap: u128 },

    #[error("recursion budget of {budget} calls exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("root finder did not converge after {iterations} iterations")]
    NumericFailure {
        iterations: usize,
        /// Best iterate at the time the cap was hit, as (re, im) pairs.
        best: Vec<(f64, f64)>,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
