//! Lazy enumeration of the two index families the residue sum and the
//! coefficient oracle iterate over: (k+1)-subsets of {1,..,n+1} and
//! compositions of d into a fixed number of non-negative parts.
//!
//! Both streams are strictly lexicographic, duplicate-free, and sliceable by
//! rank range so parallel consumers can each open their own window.

use num_bigint::BigUint;

use crate::error::{FanoError, Result};

/// Exact binomial coefficient C(a, b); returns 0 when b > a.
pub fn binomial(a: u64, b: u64) -> BigUint {
    num_integer::binomial(BigUint::from(a), BigUint::from(b))
}

/// A sorted (k+1)-subset of {1,..,n+1}, one torus-fixed coordinate plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n_plus_1: usize,
    members: Vec<usize>,
}

impl IndexSet {
    /// Builds an index set after checking membership bounds, strict ordering,
    /// and non-emptiness against the ambient size `n_plus_1`.
    pub fn new(members: Vec<usize>, n_plus_1: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(FanoError::InvalidArgument(
                "index set must be non-empty".into(),
            ));
        }
        for (pos, &m) in members.iter().enumerate() {
            if m < 1 || m > n_plus_1 {
                return Err(FanoError::InvalidArgument(format!(
                    "index set member {m} out of range 1..={n_plus_1}"
                )));
            }
            if pos > 0 && members[pos - 1] >= m {
                return Err(FanoError::InvalidArgument(format!(
                    "index set members must be strictly increasing, got {} before {m}",
                    members[pos - 1]
                )));
            }
        }
        Ok(IndexSet { n_plus_1, members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Ambient set size n+1.
    pub fn ambient(&self) -> usize {
        self.n_plus_1
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    /// The complement within {1,..,n+1}, sorted ascending; length n-k.
    pub fn complement(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n_plus_1 - self.members.len());
        let mut it = self.members.iter().peekable();
        for candidate in 1..=self.n_plus_1 {
            if it.peek() == Some(&&candidate) {
                it.next();
            } else {
                out.push(candidate);
            }
        }
        out
    }
}

/// Lexicographic stream over the (k+1)-subsets of {1,..,n+1}.
#[derive(Debug, Clone)]
pub struct IndexSets {
    n_plus_1: usize,
    k_plus_1: usize,
    state: Option<Vec<usize>>,
    remaining: Option<u64>,
}

impl IndexSets {
    fn check_sizes(n_plus_1: usize, k_plus_1: usize) -> Result<()> {
        if n_plus_1 == 0 || k_plus_1 == 0 {
            return Err(FanoError::InvalidArgument(
                "subset enumeration requires positive sizes".into(),
            ));
        }
        if k_plus_1 > n_plus_1 {
            return Err(FanoError::InvalidArgument(format!(
                "cannot choose {k_plus_1}-subsets of a {n_plus_1}-element set"
            )));
        }
        Ok(())
    }
}

/// Stream of all C(n_plus_1, k_plus_1) subsets in lexicographic order.
pub fn index_sets(n_plus_1: usize, k_plus_1: usize) -> Result<IndexSets> {
    IndexSets::check_sizes(n_plus_1, k_plus_1)?;
    Ok(IndexSets {
        n_plus_1,
        k_plus_1,
        state: Some((1..=k_plus_1).collect()),
        remaining: None,
    })
}

/// Rank-range slice [lo, hi) of the lexicographic subset stream. Ranks past
/// the end of the stream are cut off; lo >= hi yields an empty stream.
pub fn index_sets_range(n_plus_1: usize, k_plus_1: usize, lo: u64, hi: u64) -> Result<IndexSets> {
    IndexSets::check_sizes(n_plus_1, k_plus_1)?;
    let count = binomial(n_plus_1 as u64, k_plus_1 as u64);
    let state = if lo >= hi || BigUint::from(lo) >= count {
        None
    } else {
        Some(unrank_subset(n_plus_1, k_plus_1, lo))
    };
    Ok(IndexSets {
        n_plus_1,
        k_plus_1,
        state,
        remaining: Some(hi.saturating_sub(lo)),
    })
}

/// Number of index sets the full stream yields, C(n_plus_1, k_plus_1).
pub fn index_set_count(n_plus_1: usize, k_plus_1: usize) -> BigUint {
    binomial(n_plus_1 as u64, k_plus_1 as u64)
}

impl Iterator for IndexSets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        if self.remaining == Some(0) {
            self.state = None;
        }
        let members = self.state.take()?;
        if let Some(rem) = self.remaining.as_mut() {
            *rem -= 1;
        }
        self.state = subset_successor(&members, self.n_plus_1, self.k_plus_1);
        Some(IndexSet {
            n_plus_1: self.n_plus_1,
            members,
        })
    }
}

fn subset_successor(members: &[usize], n_plus_1: usize, k_plus_1: usize) -> Option<Vec<usize>> {
    let mut next = members.to_vec();
    // Rightmost position that can still move up, then consecutive tail.
    for pos in (0..k_plus_1).rev() {
        if next[pos] < n_plus_1 - (k_plus_1 - 1 - pos) {
            next[pos] += 1;
            for t in pos + 1..k_plus_1 {
                next[t] = next[t - 1] + 1;
            }
            return Some(next);
        }
    }
    None
}

/// Lexicographic unranking: the subset at 0-based `rank`.
fn unrank_subset(n_plus_1: usize, k_plus_1: usize, rank: u64) -> Vec<usize> {
    let mut r = BigUint::from(rank);
    let mut members = Vec::with_capacity(k_plus_1);
    let mut candidate = 1usize;
    for pos in 0..k_plus_1 {
        let slots_after = (k_plus_1 - 1 - pos) as u64;
        loop {
            let with_candidate = binomial((n_plus_1 - candidate) as u64, slots_after);
            if r < with_candidate {
                break;
            }
            r -= with_candidate;
            candidate += 1;
        }
        members.push(candidate);
        candidate += 1;
    }
    members
}

/// An ordered tuple of non-negative integers with fixed sum d; part j pairs
/// with the j-th smallest member of the index set it is evaluated against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }
}

/// Lexicographic stream over compositions of d into a fixed number of parts.
#[derive(Debug, Clone)]
pub struct Compositions {
    state: Option<Vec<u64>>,
    remaining: Option<u64>,
}

/// Stream of all C(d+parts-1, parts-1) compositions in lexicographic order.
pub fn compositions(d: u64, parts: usize) -> Result<Compositions> {
    if parts == 0 {
        return Err(FanoError::InvalidArgument(
            "compositions require at least one part".into(),
        ));
    }
    let mut first = vec![0u64; parts];
    first[parts - 1] = d;
    Ok(Compositions {
        state: Some(first),
        remaining: None,
    })
}

/// Rank-range slice [lo, hi) of the lexicographic composition stream.
pub fn compositions_range(d: u64, parts: usize, lo: u64, hi: u64) -> Result<Compositions> {
    if parts == 0 {
        return Err(FanoError::InvalidArgument(
            "compositions require at least one part".into(),
        ));
    }
    let count = composition_count(d, parts);
    let state = if lo >= hi || BigUint::from(lo) >= count {
        None
    } else {
        Some(unrank_composition(d, parts, lo))
    };
    Ok(Compositions {
        state,
        remaining: Some(hi.saturating_sub(lo)),
    })
}

/// Number of compositions of d into the given number of parts,
/// C(d+parts-1, parts-1).
pub fn composition_count(d: u64, parts: usize) -> BigUint {
    binomial(d + parts as u64 - 1, parts as u64 - 1)
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.remaining == Some(0) {
            self.state = None;
        }
        let parts = self.state.take()?;
        if let Some(rem) = self.remaining.as_mut() {
            *rem -= 1;
        }
        self.state = composition_successor(&parts);
        Some(Composition { parts })
    }
}

fn composition_successor(parts: &[u64]) -> Option<Vec<u64>> {
    let len = parts.len();
    let mut next = parts.to_vec();
    // Move one unit onto the rightmost part with mass to its right; the
    // remainder of that mass collapses into the last slot.
    let mut suffix = 0u64;
    for pos in (0..len.saturating_sub(1)).rev() {
        suffix += next[pos + 1];
        if suffix > 0 {
            next[pos] += 1;
            next[pos + 1..len].fill(0);
            next[len - 1] = suffix - 1;
            return Some(next);
        }
    }
    None
}

/// Compositions of d into p parts correspond to (p-1)-subsets of
/// {1,..,d+p-1} (bar positions), and the bijection preserves lexicographic
/// order, so unranking reduces to subset unranking.
fn unrank_composition(d: u64, parts: usize, rank: u64) -> Vec<u64> {
    if parts == 1 {
        return vec![d];
    }
    let universe = (d + parts as u64 - 1) as usize;
    let bars = unrank_subset(universe, parts - 1, rank);
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0u64;
    for &b in &bars {
        out.push(b as u64 - prev - 1);
        prev = b as u64;
    }
    out.push(d + parts as u64 - 1 - prev);
    out
}
