use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the exact-arithmetic pipeline.
///
/// `Internal` signals a broken invariant (a division guard tripping, or a
/// reduced Bott sum with a non-unit denominator) and always means a bug, not
/// bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Weight vectors must be pairwise distinct. Positions are 1-based.
    #[error("weights not pairwise distinct: positions {first} and {second} both hold {value}")]
    DistinctnessViolation {
        first: usize,
        second: usize,
        value: BigInt,
    },

    #[error("expected dimension is negative: delta = {delta} for (k={k}, d={d}, n={n})")]
    NegativeDelta { k: u32, d: u32, n: u32, delta: i64 },

    /// d = 2 together with n < 2k+1 falls outside the smoothness hypothesis.
    #[error("hypothesis violated: d = 2 and n < 2k+1 (k={k}, n={n}); the formula value can still be evaluated under an explicit override")]
    HypothesisViolation { k: u32, n: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, FanoError>;
