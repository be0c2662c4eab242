//! Torus weight vectors: the n+1 pairwise-distinct integers at which the
//! residue formula is evaluated. Distinctness is enforced at construction, so
//! every `WeightVector` in circulation keeps the tangent products nonzero.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::error::{FanoError, Result};

/// n+1 pairwise-distinct exact integer weights h_1,..,h_{n+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    values: Vec<BigInt>,
}

impl WeightVector {
    /// Builds a weight vector, rejecting empty input and repeated values.
    /// The violation error names the first colliding pair (1-based positions).
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(FanoError::InvalidArgument(
                "weight vector must be non-empty".into(),
            ));
        }
        validate_distinct(&values)?;
        Ok(WeightVector { values })
    }

    /// The canonical evaluation point (1, 2, .., n+1).
    pub fn sequential(n_plus_1: usize) -> Result<Self> {
        if n_plus_1 == 0 {
            return Err(FanoError::InvalidArgument(
                "weight vector must be non-empty".into(),
            ));
        }
        Ok(WeightVector {
            values: (1..=n_plus_1).map(BigInt::from).collect(),
        })
    }

    /// Distinct weights drawn uniformly from [-range_bound, range_bound],
    /// resampling collisions. Deterministic in (n_plus_1, seed, range_bound);
    /// requires range_bound >= 2*(n+1) so rejection has headroom.
    pub fn random(n_plus_1: usize, seed: u64, range_bound: u64) -> Result<Self> {
        if n_plus_1 == 0 {
            return Err(FanoError::InvalidArgument(
                "weight vector must be non-empty".into(),
            ));
        }
        if u128::from(range_bound) < 2 * n_plus_1 as u128 {
            return Err(FanoError::InvalidArgument(format!(
                "range_bound {range_bound} too small for {n_plus_1} distinct weights; need at least {}",
                2 * n_plus_1
            )));
        }
        let bound = i64::try_from(range_bound).map_err(|_| {
            FanoError::InvalidArgument(format!("range_bound {range_bound} exceeds i64 range"))
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = std::collections::HashSet::with_capacity(n_plus_1);
        let mut values = Vec::with_capacity(n_plus_1);
        while values.len() < n_plus_1 {
            let v = rng.gen_range(-bound..=bound);
            if seen.insert(v) {
                values.push(BigInt::from(v));
            }
        }
        Ok(WeightVector { values })
    }

    /// Re-checks pairwise distinctness and hands the vector back.
    pub fn validate(&self) -> Result<&Self> {
        validate_distinct(&self.values)?;
        Ok(self)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Weight of the 1-based index `i`, matching index-set member numbering.
    pub fn weight(&self, i: usize) -> &BigInt {
        &self.values[i - 1]
    }

    /// The vector c*w; scaling by zero would collapse all weights.
    pub fn scaled(&self, c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(FanoError::InvalidArgument(
                "scaling factor must be nonzero".into(),
            ));
        }
        Ok(WeightVector {
            values: self.values.iter().map(|v| v * c).collect(),
        })
    }

    /// The vector w + c*(1,..,1); translation preserves distinctness.
    pub fn translated(&self, c: &BigInt) -> Self {
        WeightVector {
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }
}

fn validate_distinct(values: &[BigInt]) -> Result<()> {
    let mut first_seen: HashMap<&BigInt, usize> = HashMap::with_capacity(values.len());
    for (pos, v) in values.iter().enumerate() {
        if let Some(&earlier) = first_seen.get(v) {
            return Err(FanoError::DistinctnessViolation {
                first: earlier + 1,
                second: pos + 1,
                value: v.clone(),
            });
        }
        first_seen.insert(v, pos);
    }
    Ok(())
}
