//! Exact computation of the degree of the Fano scheme F_k(X) of k-planes on
//! a general degree-d hypersurface X in P^n.
//!
//! The primary route is a Bott-style residue sum over the torus-fixed points
//! of the Grassmannian ([`bott::fano_degree_bott`]), evaluated in exact
//! rational arithmetic at any pairwise-distinct integer weight vector. Two
//! independent coefficient-extraction formulas ([`oracle::dm_degree`] and
//! [`oracle::vdw_lines`]) cross-validate it. All three agree on classical
//! counts such as the 27 lines on a cubic surface and the 2875 lines on a
//! quintic threefold.

pub mod bott;
pub mod combinatorics;
pub mod error;
pub mod oracle;
pub mod weights;

pub use bott::{
    bott_term, bott_terms, expected_dimension, fano_degree_bott, fano_degree_bott_with,
    lines_on_hypersurface, p2_localization_identity, q_term, s_term, t_term, BottOptions,
    BottTerm, ExactRational, ProblemInstance,
};
pub use combinatorics::{
    binomial, composition_count, compositions, compositions_range, index_set_count, index_sets,
    index_sets_range, Composition, Compositions, IndexSet, IndexSets,
};
pub use error::{FanoError, Result};
pub use oracle::{dm_degree, vandermonde, vdw_lines, ExponentCap, SparsePolynomial};
pub use weights::WeightVector;

pub use num_bigint::{BigInt, BigUint};
