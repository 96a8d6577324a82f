//! Exact rational linear algebra: matrices, canonical subspaces and flags.
//!
//! Matrices of `gl_n` are flattened row-major into `Q^{n²}` whenever a space
//! of matrices is needed, so one subspace engine serves vectors and matrices.

mod flag;
mod matrix;
mod rational;
mod subspace;

pub use flag::{unit_vector, Flag};
pub use matrix::{PluFactors, RMatrix};
pub use rational::{
    format_rational, is_prime, parse_rational, rat, ratio, serde_rational, serde_rational_vec,
    valuation, Rational, RationalText, Valuation,
};
pub use subspace::{kernel, Subspace};

use crate::error::Result;

/// Reduced row-echelon form and rank.
pub fn rref(m: &RMatrix) -> (RMatrix, usize) {
    m.rref()
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn flag_of_matrix(g: &RMatrix) -> Result<Flag> {
    Flag::of_matrix(g)
}
