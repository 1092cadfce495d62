//! Exact arithmetic in GF(p^k) and dense linear algebra over it.

mod field;
mod matrix;
pub mod poly;

pub use field::{is_prime, prime_power, Field, MAX_FIELD_ORDER};
pub use matrix::{intersect, row_space, sum_spaces, Echelon, Matrix};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field GF({p}^{k}) is outside the supported range")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix text parse error: {0}")]
    Parse(String),
}
