//! Coefficient-extraction oracles, independent of the residue sum: the
//! `dm` formula (the coefficient of x_0^n x_1^{n-1} .. x_k^{n-k} in a
//! product of linear forms times a Vandermonde factor) and the classical
//! two-variable line-count formula behind `vdw`.
//!
//! Only a single coefficient is ever wanted, so multiplication truncates
//! against a per-variable exponent cap: any term exceeding the cap in some
//! coordinate can never flow back under it and is dropped on the spot.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::bott::ProblemInstance;
use crate::combinatorics::compositions;
use crate::error::{FanoError, Result};

/// Per-variable exponent bounds for truncated multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentCap {
    caps: Vec<u32>,
}

impl ExponentCap {
    pub fn new(caps: Vec<u32>) -> Self {
        ExponentCap { caps }
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn num_vars(&self) -> usize {
        self.caps.len()
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients,
/// stored sparsely keyed by exponent vector. The key order (lexicographic on
/// exponent vectors) is the canonical term order; no zero coefficient is
/// ever stored. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        SparsePolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, value: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(vec![0; num_vars], value);
        }
        SparsePolynomial { num_vars, terms }
    }

    /// The linear form sum_i coeffs\[i\] * x_i.
    pub fn linear_form(coeffs: &[BigInt]) -> Self {
        let num_vars = coeffs.len();
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; num_vars];
                e[i] = 1;
                terms.insert(e, c.clone());
            }
        }
        SparsePolynomial { num_vars, terms }
    }

    /// Builds from raw (exponent vector, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(
        num_vars: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in entries {
            if e.len() != num_vars {
                return Err(FanoError::DimensionMismatch(format!(
                    "exponent vector of length {} in a {num_vars}-variable polynomial",
                    e.len()
                )));
            }
            let slot = terms.entry(e).or_insert_with(BigInt::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { num_vars, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the canonical (lexicographic) exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The coefficient of the given monomial, zero if absent.
    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Product with every term exceeding `cap` in any coordinate discarded;
    /// agrees with the full product on all surviving terms.
    pub fn mul_truncated(&self, other: &Self, cap: &ExponentCap) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(FanoError::DimensionMismatch(format!(
                "cannot multiply polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        if cap.num_vars() != self.num_vars {
            return Err(FanoError::DimensionMismatch(format!(
                "cap of length {} for a {}-variable product",
                cap.num_vars(),
                self.num_vars
            )));
        }
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            'pairs: for (e2, c2) in &other.terms {
                let mut e = Vec::with_capacity(self.num_vars);
                for ((a, b), c) in e1.iter().zip(e2).zip(cap.caps()) {
                    match a.checked_add(*b) {
                        Some(s) if s <= *c => e.push(s),
                        Some(_) => continue 'pairs,
                        None if *c < u32::MAX => continue 'pairs,
                        None => {
                            return Err(FanoError::InvalidArgument(
                                "exponent overflow in polynomial product".into(),
                            ))
                        }
                    }
                }
                let slot = terms.entry(e).or_insert_with(BigInt::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial {
            num_vars: self.num_vars,
            terms,
        })
    }

    /// Full (untruncated) product.
    pub fn mul_full(&self, other: &Self) -> Result<Self> {
        let cap = ExponentCap::new(vec![u32::MAX; self.num_vars]);
        self.mul_truncated(other, &cap)
    }

    /// self^exp under the cap, by repeated squaring; exp = 0 gives 1.
    pub fn pow_truncated(&self, exp: u64, cap: &ExponentCap) -> Result<Self> {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_truncated(&base, cap)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, cap)?;
            }
        }
        Ok(result)
    }
}

/// The expanded Vandermonde product prod_{0 <= i < j <= k} (x_i - x_j) in
/// k_plus_1 variables; the empty product (k_plus_1 = 1) is the constant 1.
pub fn vandermonde(k_plus_1: usize) -> SparsePolynomial {
    assert!(k_plus_1 >= 1, "need at least one variable");
    let mut result = SparsePolynomial::one(k_plus_1);
    for i in 0..k_plus_1 {
        for j in i + 1..k_plus_1 {
            let mut coeffs = vec![BigInt::zero(); k_plus_1];
            coeffs[i] = BigInt::one();
            coeffs[j] = -BigInt::one();
            let factor = SparsePolynomial::linear_form(&coeffs);
            result = result
                .mul_full(&factor)
                .expect("factors share the variable count");
        }
    }
    result
}

/// Degree of F_k(X) as the coefficient of x_0^n x_1^{n-1} .. x_k^{n-k} in
/// [prod over compositions (v) of d of (sum_i v_i x_i)] * (x_0+..+x_k)^delta
/// * prod_{i<j} (x_i - x_j), extracted with the cap (n, n-1, .., n-k).
///
/// The linear forms are folded in ascending composition order, then the
/// delta-th power by repeated squaring, then the Vandermonde factor, so the
/// cap prunes earliest on the largest partial product.
pub fn dm_degree(p: &ProblemInstance) -> Result<BigInt> {
    let delta = p.delta_exponent()?;
    let num_vars = p.k_plus_1();
    let target: Vec<u32> = (0..num_vars as u32).map(|i| p.n() - i).collect();
    let cap = ExponentCap::new(target.clone());

    let mut acc = SparsePolynomial::one(num_vars);
    for comp in compositions(u64::from(p.d()), num_vars)? {
        let coeffs: Vec<BigInt> = comp.parts().iter().map(|&v| BigInt::from(v)).collect();
        acc = acc.mul_truncated(&SparsePolynomial::linear_form(&coeffs), &cap)?;
    }

    let all_ones = SparsePolynomial::linear_form(&vec![BigInt::one(); num_vars]);
    acc = acc.mul_truncated(&all_ones.pow_truncated(delta, &cap)?, &cap)?;
    acc = acc.mul_truncated(&vandermonde(num_vars), &cap)?;

    Ok(acc.coefficient(&target))
}

/// Number of lines on a general hypersurface of degree d = 2n-3 in P^n, as
/// the coefficient of x^n y^{n-1} in (x - y) * prod_{i=0}^{d} ((d-i)x + iy).
pub fn vdw_lines(n: u32) -> Result<BigInt> {
    if n < 3 {
        return Err(FanoError::InvalidArgument(format!(
            "the line-count formula needs n >= 3, got {n}"
        )));
    }
    let d = 2 * u64::from(n) - 3;
    let cap = ExponentCap::new(vec![n, n - 1]);
    let mut acc = SparsePolynomial::linear_form(&[BigInt::one(), -BigInt::one()]);
    for i in 0..=d {
        let factor = SparsePolynomial::linear_form(&[BigInt::from(d - i), BigInt::from(i)]);
        acc = acc.mul_truncated(&factor, &cap)?;
    }
    Ok(acc.coefficient(&[n, n - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn lin(coeffs: &[i64]) -> SparsePolynomial {
        let c: Vec<BigInt> = coeffs.iter().map(|&v| big(v)).collect();
        SparsePolynomial::linear_form(&c)
    }

    #[test]
    fn truncated_square_of_a_binomial() {
        let p = lin(&[1, 1]);
        let cap = ExponentCap::new(vec![2, 2]);
        let sq = p.mul_truncated(&p, &cap).unwrap();
        assert_eq!(sq.coefficient(&[2, 0]), big(1));
        assert_eq!(sq.coefficient(&[1, 1]), big(2));
        assert_eq!(sq.coefficient(&[0, 2]), big(1));
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn truncation_drops_over_cap_terms() {
        let x0_sq = SparsePolynomial::from_terms(2, [(vec![2, 0], big(1))]).unwrap();
        let x0 = lin(&[1, 0]);
        let cap = ExponentCap::new(vec![2, 1000]);
        let cut = x0_sq.mul_truncated(&x0, &cap).unwrap();
        assert!(cut.is_zero());

        let one_plus_x0 = SparsePolynomial::from_terms(2, [(vec![0, 0], big(1)), (vec![1, 0], big(1))])
            .unwrap();
        let cap = ExponentCap::new(vec![1, 1000]);
        let sq = one_plus_x0.mul_truncated(&one_plus_x0, &cap).unwrap();
        assert_eq!(sq.coefficient(&[0, 0]), big(1));
        assert_eq!(sq.coefficient(&[1, 0]), big(2));
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = lin(&[1, 2]);
        let b = lin(&[1, 2, 3]);
        assert!(a.mul_full(&b).is_err());
        let cap = ExponentCap::new(vec![1]);
        assert!(a.mul_truncated(&a, &cap).is_err());
    }

    #[test]
    fn vandermonde_small_cases() {
        let v1 = vandermonde(1);
        assert_eq!(v1.coefficient(&[0]), big(1));
        assert_eq!(v1.num_terms(), 1);

        let v2 = vandermonde(2);
        assert_eq!(v2.coefficient(&[1, 0]), big(1));
        assert_eq!(v2.coefficient(&[0, 1]), big(-1));
        assert_eq!(v2.num_terms(), 2);
    }

    #[test]
    fn vandermonde_three_variables_expands_to_six_signed_terms() {
        let v3 = vandermonde(3);
        let expected = [
            (vec![2u32, 1, 0], 1i64),
            (vec![2, 0, 1], -1),
            (vec![1, 2, 0], -1),
            (vec![1, 0, 2], 1),
            (vec![0, 2, 1], 1),
            (vec![0, 1, 2], -1),
        ];
        assert_eq!(v3.num_terms(), 6);
        for (e, c) in expected {
            assert_eq!(v3.coefficient(&e), big(c), "at exponent {e:?}");
        }
    }

    #[test]
    fn dm_degree_examples() {
        let p = ProblemInstance::new(1, 3, 3).unwrap();
        assert_eq!(dm_degree(&p).unwrap(), big(27));

        let p = ProblemInstance::new(1, 5, 4).unwrap();
        assert_eq!(dm_degree(&p).unwrap(), big(2875));

        // k = 0 collapses to the coefficient of x_0^n in (d x_0) x_0^{n-1}.
        for (d, n) in [(3u32, 2u32), (4, 6), (6, 8)] {
            let p = ProblemInstance::new(0, d, n).unwrap();
            assert_eq!(dm_degree(&p).unwrap(), big(i64::from(d)));
        }
    }

    #[test]
    fn dm_degree_rejects_negative_delta() {
        let p = ProblemInstance::new(1, 4, 3).unwrap();
        assert!(matches!(
            dm_degree(&p),
            Err(FanoError::NegativeDelta { .. })
        ));
    }

    #[test]
    fn vdw_line_counts() {
        assert_eq!(vdw_lines(3).unwrap(), big(27));
        assert_eq!(vdw_lines(4).unwrap(), big(2875));
        assert_eq!(vdw_lines(5).unwrap(), big(698005));
        assert!(vdw_lines(2).is_err());
    }

    #[test]
    fn coefficient_of_missing_monomial_is_zero() {
        let p = lin(&[3, 0, -2]);
        assert_eq!(p.coefficient(&[0, 1, 0]), big(0));
        assert_eq!(p.coefficient(&[0, 0, 1]), big(-2));
    }
}
