use thiserror::Error;

/// Failures of the exact-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{requested} variables requested, at most {max} supported")]
    TooManyVariables { requested: usize, max: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not homogeneous of positive degree: {0}")]
    NonHomogeneous(String),
    #[error("ring has Krull dimension 0; a positive-dimensional ring is required")]
    ZeroDimensional,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("t = {t} outside the supported range [{min}, {max}]")]
    TOutOfRange { t: i64, min: i64, max: i64 },
    #[error("{0} does not have finite length")]
    InfiniteLength(String),
    #[error("homology H_{p} of K(a; {t}) does not have finite length")]
    InfiniteHomology { p: usize, t: i64 },
    #[error("lambda did not stabilize up to n = {n_max}; last differences {last_differences:?}")]
    NoStabilization {
        n_max: usize,
        last_differences: Vec<i64>,
    },
    #[error("fitted polynomial disagrees with lambda at n = {n}: P(n) = {fitted}, lambda(n) = {observed}")]
    RefitMismatch {
        n: usize,
        fitted: i64,
        observed: i64,
    },
    #[error("no parameter module found after {attempts} random attempts")]
    SamplingExhausted { attempts: usize },
}

impl Error {
    /// True when the failure is a resource limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Algebra(AlgebraError::BudgetExceeded { .. })
                | Error::NoStabilization { .. }
                | Error::RefitMismatch { .. }
                | Error::SamplingExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
