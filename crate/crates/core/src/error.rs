use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("k = {k} is outside [0, n] for n = {n}")]
    KOutOfRange { n: u64, k: u64 },
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: u64, min: u64 },
    #[error("index i = {i} is outside [0, {n}]")]
    IndexOutOfRange { n: u64, i: i64 },
    #[error("degenerate parameters n = {n}, k = {k}: variance is zero")]
    Degenerate { n: u64, k: u64 },
    #[error("{0}")]
    Domain(String),
    #[error("exhaustive enumeration supports at most {max} coefficients, got {n}; use sample_prob_within")]
    Capacity { n: usize, max: usize },
    #[error("coefficient vector is not unit norm: sum of squares = {sum_sq}")]
    NotUnitNorm { sum_sq: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
