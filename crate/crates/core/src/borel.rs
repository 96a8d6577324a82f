//! Borel subalgebras of `gl_n`, graded-`w_0` intersections and the Borel
//! envelope decomposition.
//!
//! For invertible `g` write `b_g = g⁻¹ b g` for the conjugate of the
//! upper-triangular matrices `b`, so `M ∈ b_g` iff `g M g⁻¹` is upper
//! triangular. The graded-`w_0` intersection `(b_g ∩ b_h)^{gr=w_0}` consists
//! of the `M` in both Borels whose diagonals satisfy
//! `diag(h M h⁻¹) = reverse(diag(g M g⁻¹))`. Since reversal is an involution
//! this condition is symmetric in `g` and `h`.
//!
//! The envelope theorem says that every Borel `b'` is the sum, over the full
//! cycles `c ∈ C_n`, of `(b' ∩ b_{c w'})^{gr=w_0}` for a suitable witness
//! `w'`, and that `w' = 1` works when `b' = b_{w_0 b}` with `b` upper
//! triangular.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{check_dim, FernError, Result};
use crate::exactlin::{kernel, RMatrix, Rational, Subspace};
use crate::par::{self, Parallelism};
use crate::weyl::{full_cycles_labelled, longest, Permutation};

/// Coefficient row of the linear functional `M ↦ (x M x⁻¹)[r][s]` on the
/// row-major flattening of `M`.
fn conjugate_entry(x: &RMatrix, x_inv: &RMatrix, r: usize, s: usize) -> Vec<Rational> {
    let n = x.rows();
    let mut row = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            row.push(x.get(r, a) * x_inv.get(b, s));
        }
    }
    row
}

/// Equations saying `x M x⁻¹` has no entries strictly below the diagonal.
fn lower_vanishing(x: &RMatrix, x_inv: &RMatrix) -> Vec<Vec<Rational>> {
    let n = x.rows();
    let mut eqs = Vec::with_capacity(n * (n - 1) / 2);
    for r in 0..n {
        for s in 0..r {
            eqs.push(conjugate_entry(x, x_inv, r, s));
        }
    }
    eqs
}

fn solve(n: usize, equations: Vec<Vec<Rational>>) -> Subspace {
    let rows = equations.len();
    let flat: Vec<Rational> = equations.into_iter().flatten().collect();
    kernel(&RMatrix::new(rows, n * n, flat).expect("equation rows have length n²"))
}

fn require_square(g: &RMatrix) -> Result<usize> {
    if !g.is_square() {
        return Err(FernError::Dimension { expected: g.rows(), found: g.cols() });
    }
    Ok(g.rows())
}

/// Graded-`w_0` intersection for conjugators given together with their
/// inverses: `{M : x M x⁻¹, y M y⁻¹ ∈ b, diag(y M y⁻¹) = rev diag(x M x⁻¹)}`.
pub(crate) fn graded_w0_conjugated(
    x: &RMatrix,
    x_inv: &RMatrix,
    y: &RMatrix,
    y_inv: &RMatrix,
) -> Subspace {
    let n = x.rows();
    let mut eqs = lower_vanishing(x, x_inv);
    eqs.extend(lower_vanishing(y, y_inv));
    for k in 0..n {
        let lhs = conjugate_entry(y, y_inv, k, k);
        let rhs = conjugate_entry(x, x_inv, n - 1 - k, n - 1 - k);
        eqs.push(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect());
    }
    solve(n, eqs)
}

/// The Borel subalgebra `b_g = g⁻¹ b g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelSubalgebra {
    pub n: usize,
    pub conjugator: RMatrix,
    #[serde(skip)]
    pub space: Subspace,
}

impl BorelSubalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, m: &RMatrix) -> Result<bool> {
        check_dim(self.n, m.rows())?;
        check_dim(self.n, m.cols())?;
        self.space.contains(m.flat())
    }

    /// Canonical basis as `n×n` matrices.
    pub fn basis_matrices(&self) -> Vec<RMatrix> {
        subspace_matrices(self.n, &self.space)
    }
}

/// Reads the basis of a subspace of `Q^{n²}` back as matrices.
pub fn subspace_matrices(n: usize, s: &Subspace) -> Vec<RMatrix> {
    s.basis_vectors()
        .into_iter()
        .map(|v| RMatrix::from_flat(n, v).expect("n² entries"))
        .collect()
}

pub fn borel_of(g: &RMatrix) -> Result<BorelSubalgebra> {
    let n = require_square(g)?;
    let g_inv = g.inverse()?;
    let space = solve(n, lower_vanishing(g, &g_inv));
    Ok(BorelSubalgebra { n, conjugator: g.clone(), space })
}

/// `(b_g ∩ b_h)^{gr=w_0}`.
pub fn graded_w0_intersection(g: &RMatrix, h: &RMatrix) -> Result<Subspace> {
    let n = require_square(g)?;
    check_dim(n, h.rows())?;
    check_dim(n, h.cols())?;
    let g_inv = g.inverse()?;
    let h_inv = h.inverse()?;
    Ok(graded_w0_conjugated(g, &g_inv, h, &h_inv))
}

/// `g = u · l · s` with `u` upper triangular, `l` lower triangular and `s` a
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlsDecomposition {
    pub u: RMatrix,
    pub l: RMatrix,
    pub s: Permutation,
}

/// Computes `g = u l s` from a row-pivoted LU factorisation of `w_0 g⁻¹`:
/// if `w_0 g⁻¹ = P L U` then `g = U⁻¹ · L⁻¹ · (P⁻¹ w_0)`.
///
/// Reversing the rows first means `s = w_0` whenever `g` lies in the big
/// cell `B w_0 B`; in particular `g = w_0 b` yields the trivial witness.
pub fn uls_decompose(g: &RMatrix) -> Result<UlsDecomposition> {
    let n = require_square(g)?;
    let g_inv = g.inverse()?;
    let w0 = longest(n)?;
    let factors = w0.matrix().mul(&g_inv)?.plu()?;
    let pi = Permutation::from_zero_based(factors.perm);
    let u = factors.upper.inverse()?;
    let l = factors.lower.inverse()?;
    let s = &pi.inverse() * &w0;
    Ok(UlsDecomposition { u, l, s })
}

/// The witness `w' = w_0 s` from `g = u l s`.
pub fn envelope_witness(g: &RMatrix) -> Result<Permutation> {
    let n = require_square(g)?;
    let d = uls_decompose(g)?;
    Ok(&longest(n)? * &d.s)
}

/// The matrix `a^{i,j}` (1-based `i >= j`) attached to an invertible upper
/// triangular `b`.
///
/// It is the endomorphism `π` of `Q^n` that sends `e_j` to `e_i` and kills
/// every other vector of the basis
/// `b e_1, …, b e_{j-1}, e_j, b e_{j+1}, …, b e_i, e_{i+1}, …, e_n`.
/// Its image is `Q e_i`, so the matrix is supported on row `i`, and it lies
/// in `(b_{w_0} ∩ b_{c_{i,j} b⁻¹})^{gr=w_0}`.
pub fn aij_matrix(b: &RMatrix, i: usize, j: usize) -> Result<RMatrix> {
    let n = require_square(b)?;
    if j == 0 || i < j || i > n {
        return Err(FernError::Domain(format!("a^{{{i},{j}}} needs n >= i >= j >= 1 (n = {n})")));
    }
    if !b.is_upper_triangular() {
        return Err(FernError::Domain("a^{i,j} needs an upper-triangular b".into()));
    }
    if b.diagonal().iter().any(Zero::is_zero) {
        return Err(FernError::Singular);
    }
    let mut basis = RMatrix::identity(n);
    for k in 1..=n {
        if k == j || k > i {
            continue;
        }
        for r in 0..n {
            basis.set(r, k - 1, b.get(r, k - 1).clone());
        }
    }
    // π · basis = E_{ij}, hence π = e_i ⊗ (row j of basis⁻¹)
    let inv = basis.inverse()?;
    let mut a = RMatrix::zeros(n, n);
    for c in 0..n {
        a.set(i - 1, c, inv.get(j - 1, c).clone());
    }
    Ok(a)
}

/// One summand `(b_g ∩ b_{c w'})^{gr=w_0}` of the envelope decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeSummand {
    /// `c = c_{i,j}`; the identity is reported as `(1, 1)`.
    pub cycle: Permutation,
    pub cycle_notation: String,
    pub i: usize,
    pub j: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub n: usize,
    pub witness: Permutation,
    pub summands: Vec<EnvelopeSummand>,
    pub borel_dim: usize,
    pub total_span_dim: usize,
    pub verified: bool,
}

impl EnvelopeReport {
    pub fn summand_dim_total(&self) -> usize {
        self.summands.iter().map(|s| s.dim).sum()
    }
}

/// Sums `(b_g ∩ b_{c w'})^{gr=w_0}` over `c ∈ C_n` and checks the result is
/// all of `b_g`. The summands are independent and are computed with `mode`;
/// the merge is in the fixed order of [`full_cycles_labelled`].
pub fn verify_envelope_with(
    g: &RMatrix,
    witness: &Permutation,
    mode: Parallelism,
) -> Result<EnvelopeReport> {
    let n = require_square(g)?;
    if witness.n() != n {
        return Err(FernError::Dimension { expected: n, found: witness.n() });
    }
    let g_inv = g.inverse()?;
    let borel = solve(n, lower_vanishing(g, &g_inv));
    let cycles = full_cycles_labelled(n)?;
    let pieces = par::map(mode, &cycles, |(_, _, c)| {
        let x = (c * witness).matrix();
        // permutation matrices are orthogonal
        let x_inv = x.transpose();
        graded_w0_conjugated(g, &g_inv, &x, &x_inv)
    });
    let mut span = Subspace::zero(n * n);
    let mut summands = Vec::with_capacity(cycles.len());
    for ((i, j, c), piece) in cycles.into_iter().zip(pieces) {
        span = span.sum(&piece)?;
        summands.push(EnvelopeSummand { cycle_notation: c.cycle_notation(), cycle: c, i, j, dim: piece.dim() });
    }
    let total_span_dim = span.dim();
    let verified = total_span_dim == n * (n + 1) / 2 && span == borel;
    Ok(EnvelopeReport {
        n,
        witness: witness.clone(),
        summands,
        borel_dim: borel.dim(),
        total_span_dim,
        verified,
    })
}

pub fn verify_envelope(g: &RMatrix, witness: &Permutation) -> Result<EnvelopeReport> {
    verify_envelope_with(g, witness, Parallelism::default())
}
