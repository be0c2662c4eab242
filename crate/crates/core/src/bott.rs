//! The residue-sum engine: deg F_k(X) = (-1)^delta * sum_I S_I * Q_I^delta / T_I,
//! taken over all (k+1)-subsets I of {1,..,n+1} and evaluated in exact
//! rational arithmetic at a pairwise-distinct integer weight vector.
//!
//! Per fixed point I the three factors are
//!   S_I = prod over compositions (v) of d of (sum_j v_j * h_{i_j}),
//!   Q_I = sum of the weights outside I,
//!   T_I = prod over i in I, j not in I of (h_i - h_j),
//! and the whole sum is a constant in the weights, an integer. Integrality is
//! enforced after reduction rather than assumed: a non-unit denominator
//! aborts with an internal error, which makes the final division a
//! whole-pipeline tripwire.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::combinatorics::{
    binomial, compositions, index_set_count, index_sets_range, IndexSet,
};
use crate::error::{FanoError, Result};
use crate::weights::WeightVector;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type ExactRational = num_rational::BigRational;

/// The validated triple (k, d, n) with the derived expected dimension delta.
///
/// Construction checks k < n and d >= 1 only; a negative delta is
/// representable (callers decide how to report it) but rejected by every
/// computation, and the smoothness hypothesis "d != 2 or n >= 2k+1" is
/// enforced by the degree computation unless explicitly overridden.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemInstance {
    k: u32,
    d: u32,
    n: u32,
    delta: i64,
}

impl ProblemInstance {
    pub fn new(k: u32, d: u32, n: u32) -> Result<Self> {
        let delta_exact = expected_dimension(k, d, n)?;
        let delta = i64::try_from(&delta_exact).map_err(|_| {
            FanoError::InvalidArgument(format!(
                "expected dimension {delta_exact} exceeds the supported 64-bit range"
            ))
        })?;
        Ok(ProblemInstance { k, d, n, delta })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// delta = (k+1)(n-k) - C(d+k, d); negative means no computation applies.
    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn k_plus_1(&self) -> usize {
        self.k as usize + 1
    }

    pub fn n_plus_1(&self) -> usize {
        self.n as usize + 1
    }

    /// Whether (k, d, n) meets the hypothesis "d != 2 (or n >= 2k+1)".
    pub fn hypothesis_satisfied(&self) -> bool {
        self.d != 2 || u64::from(self.n) > 2 * u64::from(self.k)
    }

    /// delta as an exponent; rejects negative delta since Q_I^delta would be
    /// undefined.
    pub fn delta_exponent(&self) -> Result<u64> {
        u64::try_from(self.delta).map_err(|_| FanoError::NegativeDelta {
            k: self.k,
            d: self.d,
            n: self.n,
            delta: self.delta,
        })
    }
}

/// Expected dimension (k+1)(n-k) - C(d+k, d) of the Fano scheme, exact and
/// possibly negative.
pub fn expected_dimension(k: u32, d: u32, n: u32) -> Result<BigInt> {
    if k >= n {
        return Err(FanoError::InvalidArgument(format!(
            "require k < n, got k={k}, n={n}"
        )));
    }
    if d < 1 {
        return Err(FanoError::InvalidArgument("require d >= 1".into()));
    }
    let cells = BigInt::from(u64::from(k) + 1) * BigInt::from(u64::from(n) - u64::from(k));
    let conditions = BigInt::from(binomial(u64::from(d) + u64::from(k), u64::from(d)));
    Ok(cells - conditions)
}

/// One fixed-point contribution: the factors S_I, Q_I, T_I at the given
/// weights and the reduced rational value S_I * Q_I^delta / T_I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottTerm {
    pub index_set: IndexSet,
    pub s_value: BigInt,
    pub q_value: BigInt,
    pub t_value: BigInt,
    pub term: ExactRational,
}

/// S_I: product over all compositions (v) of d into k+1 parts of
/// sum_j v_j * h_{i_j}, where i_j is the j-th smallest member of I.
/// Exactly C(d+k, d) factors.
pub fn s_term(w: &WeightVector, index_set: &IndexSet, d: u32) -> BigInt {
    assert_eq!(
        w.len(),
        index_set.ambient(),
        "weight vector length must match the index set's ambient size"
    );
    let members = index_set.members();
    let mut product = BigInt::one();
    for comp in compositions(u64::from(d), members.len()).expect("k+1 >= 1") {
        let mut factor = BigInt::zero();
        for (&v, &i) in comp.parts().iter().zip(members) {
            if v != 0 {
                factor += BigInt::from(v) * w.weight(i);
            }
        }
        product *= factor;
    }
    product
}

/// Q_I: the sum of the weights over the complement of I (zero when I is the
/// full set).
pub fn q_term(w: &WeightVector, index_set: &IndexSet) -> BigInt {
    assert_eq!(
        w.len(),
        index_set.ambient(),
        "weight vector length must match the index set's ambient size"
    );
    index_set
        .complement()
        .into_iter()
        .fold(BigInt::zero(), |acc, j| acc + w.weight(j))
}

/// T_I: the (k+1)(n-k)-factor tangent product prod_{i in I, j not in I}
/// (h_i - h_j). Zero is impossible on a distinct weight vector, so a zero
/// here is reported as an internal error.
pub fn t_term(w: &WeightVector, index_set: &IndexSet) -> Result<BigInt> {
    assert_eq!(
        w.len(),
        index_set.ambient(),
        "weight vector length must match the index set's ambient size"
    );
    let complement = index_set.complement();
    let mut product = BigInt::one();
    for &i in index_set.members() {
        for &j in &complement {
            product *= w.weight(i) - w.weight(j);
        }
    }
    if product.is_zero() {
        return Err(FanoError::Internal(
            "tangent weight product vanished; an unvalidated weight vector leaked through".into(),
        ));
    }
    Ok(product)
}

/// Evaluates one fixed-point term. Q_I^0 is 1 by convention even when
/// Q_I = 0, matching the delta = 0 form of the sum, which has no Q factor.
pub fn bott_term(p: &ProblemInstance, w: &WeightVector, index_set: IndexSet) -> Result<BottTerm> {
    if index_set.ambient() != p.n_plus_1() || index_set.len() != p.k_plus_1() {
        return Err(FanoError::DimensionMismatch(format!(
            "index set of size {} in ambient {} does not fit (k={}, n={})",
            index_set.len(),
            index_set.ambient(),
            p.k(),
            p.n()
        )));
    }
    let delta = p.delta_exponent()?;
    let s_value = s_term(w, &index_set, p.d());
    let q_value = q_term(w, &index_set);
    let t_value = t_term(w, &index_set)?;
    let q_power = if delta == 0 {
        BigInt::one()
    } else {
        Pow::pow(&q_value, delta)
    };
    let term = ExactRational::new(&s_value * q_power, t_value.clone());
    Ok(BottTerm {
        index_set,
        s_value,
        q_value,
        t_value,
        term,
    })
}

/// All fixed-point terms in lexicographic index-set order. Mainly an
/// inspection surface; the degree computations fold terms without keeping
/// them.
pub fn bott_terms(p: &ProblemInstance, w: &WeightVector) -> Result<Vec<BottTerm>> {
    check_weight_length(p, w)?;
    p.delta_exponent()?;
    let count = checked_term_count(p)?;
    index_sets_range(p.n_plus_1(), p.k_plus_1(), 0, count)?
        .map(|index_set| bott_term(p, w, index_set))
        .collect()
}

/// Knobs for the degree computation; `Default` is single-threaded with the
/// hypothesis enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BottOptions {
    /// Worker count for the partitioned reduction; 0 is treated as 1.
    pub threads: usize,
    /// Evaluate the formula even when d = 2 and n < 2k+1. The value is then
    /// the formula value; the Fano-scheme interpretation is not guaranteed.
    pub force_hypothesis: bool,
}

impl Default for BottOptions {
    fn default() -> Self {
        BottOptions {
            threads: 1,
            force_hypothesis: false,
        }
    }
}

/// The degree of F_k(X), single-threaded, hypothesis enforced.
pub fn fano_degree_bott(p: &ProblemInstance, w: &WeightVector) -> Result<BigInt> {
    fano_degree_bott_with(p, w, &BottOptions::default())
}

/// The degree of F_k(X) as (-1)^delta * sum_I S_I Q_I^delta / T_I.
///
/// Work is partitioned into lexicographic rank ranges, one per worker, and
/// the partial sums are combined in rank order; exact arithmetic makes the
/// result bit-identical to the serial fold. The sign is applied once to the
/// final sum, and the reduced sum must have denominator 1.
pub fn fano_degree_bott_with(
    p: &ProblemInstance,
    w: &WeightVector,
    options: &BottOptions,
) -> Result<BigInt> {
    check_weight_length(p, w)?;
    let delta = p.delta_exponent()?;
    if !p.hypothesis_satisfied() && !options.force_hypothesis {
        return Err(FanoError::HypothesisViolation { k: p.k(), n: p.n() });
    }
    let count = checked_term_count(p)?;
    let threads = options.threads.max(1).min(count.max(1) as usize);

    let total = if threads <= 1 {
        chunk_sum(p, w, 0, count)?
    } else {
        let bounds = partition_ranks(count, threads);
        let partials: Result<Vec<ExactRational>> = std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .into_iter()
                .map(|(lo, hi)| scope.spawn(move || chunk_sum(p, w, lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("residue-sum worker panicked"))
                .collect()
        });
        partials?
            .into_iter()
            .fold(ExactRational::zero(), |acc, part| acc + part)
    };

    let signed = if delta % 2 == 1 { -total } else { total };
    if !signed.is_integer() {
        return Err(FanoError::Internal(format!(
            "reduced Bott sum has a non-unit denominator: {signed}"
        )));
    }
    Ok(signed.to_integer())
}

fn check_weight_length(p: &ProblemInstance, w: &WeightVector) -> Result<()> {
    if w.len() != p.n_plus_1() {
        return Err(FanoError::DimensionMismatch(format!(
            "need {} weights for n = {}, got {}",
            p.n_plus_1(),
            p.n(),
            w.len()
        )));
    }
    Ok(())
}

fn checked_term_count(p: &ProblemInstance) -> Result<u64> {
    u64::try_from(index_set_count(p.n_plus_1(), p.k_plus_1())).map_err(|_| {
        FanoError::InvalidArgument(format!(
            "C({}, {}) fixed points exceed the enumerable range",
            p.n_plus_1(),
            p.k_plus_1()
        ))
    })
}

fn chunk_sum(p: &ProblemInstance, w: &WeightVector, lo: u64, hi: u64) -> Result<ExactRational> {
    let mut acc = ExactRational::zero();
    for index_set in index_sets_range(p.n_plus_1(), p.k_plus_1(), lo, hi)? {
        acc += bott_term(p, w, index_set)?.term;
    }
    Ok(acc)
}

fn partition_ranks(count: u64, chunks: usize) -> Vec<(u64, u64)> {
    let chunks = chunks as u128;
    let count = count as u128;
    (0..chunks)
        .map(|t| {
            let lo = (t * count / chunks) as u64;
            let hi = ((t + 1) * count / chunks) as u64;
            (lo, hi)
        })
        .collect()
}

/// The number of lines on a general hypersurface of degree 2n-3 in P^n,
/// through the delta = 0 pair-sum specialization
/// sum_{i<j} S_{ij} / T_{ij} with
/// S_{ij} = prod_{a=0}^{2n-3} (a h_i + (2n-3-a) h_j) and
/// T_{ij} = prod_{m != i,j} (h_i - h_m)(h_j - h_m).
///
/// This is a distinct code path from `fano_degree_bott`, useful as an
/// in-crate cross-check for the k = 1 specialization.
pub fn lines_on_hypersurface(n: u32, w: &WeightVector) -> Result<BigInt> {
    if n < 3 {
        return Err(FanoError::InvalidArgument(format!(
            "lines specialization needs n >= 3, got {n}"
        )));
    }
    let n_plus_1 = n as usize + 1;
    if w.len() != n_plus_1 {
        return Err(FanoError::DimensionMismatch(format!(
            "need {} weights for n = {}, got {}",
            n_plus_1,
            n,
            w.len()
        )));
    }
    let d = 2 * u64::from(n) - 3;
    let mut total = ExactRational::zero();
    for i in 1..=n_plus_1 {
        for j in i + 1..=n_plus_1 {
            let mut s = BigInt::one();
            for a in 0..=d {
                s *= BigInt::from(a) * w.weight(i) + BigInt::from(d - a) * w.weight(j);
            }
            let mut t = BigInt::one();
            for m in 1..=n_plus_1 {
                if m != i && m != j {
                    t *= (w.weight(i) - w.weight(m)) * (w.weight(j) - w.weight(m));
                }
            }
            if t.is_zero() {
                return Err(FanoError::Internal(
                    "pair tangent product vanished on a validated weight vector".into(),
                ));
            }
            total += ExactRational::new(s, t);
        }
    }
    if !total.is_integer() {
        return Err(FanoError::Internal(format!(
            "reduced pair sum has a non-unit denominator: {total}"
        )));
    }
    Ok(total.to_integer())
}

/// The three-point localization identity on the projective plane:
/// h1^2/((h3-h1)(h2-h1)) + h2^2/((h3-h2)(h1-h2)) + h3^2/((h1-h3)(h2-h3)),
/// which equals 1 for every distinct weight triple.
pub fn p2_localization_identity(w: &WeightVector) -> Result<ExactRational> {
    if w.len() != 3 {
        return Err(FanoError::DimensionMismatch(format!(
            "the plane identity takes exactly 3 weights, got {}",
            w.len()
        )));
    }
    let (h1, h2, h3) = (w.weight(1), w.weight(2), w.weight(3));
    let square = |h: &BigInt| h * h;
    let term1 = ExactRational::new(square(h1), (h3 - h1) * (h2 - h1));
    let term2 = ExactRational::new(square(h2), (h3 - h2) * (h1 - h2));
    let term3 = ExactRational::new(square(h3), (h1 - h3) * (h2 - h3));
    Ok(term1 + term2 + term3)
}
