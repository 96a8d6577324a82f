//! Points and tangent spaces of the local model `X = g̃ ×_g g̃` for `gl_n`.
//!
//! A point is `(g_1 B, A, g_2 B)` with `Ad(g_i⁻¹) A` upper triangular for both
//! `i`. Its stratum is the relative position of the flags `g_1 E` and
//! `g_2 E`. At a point with `A = 0` the tangent space of the fibre
//! `κ⁻¹(T_{w_0})` is computed in the chart `g_i (1 + ε h_i)` with `h_i`
//! strictly lower triangular, so it is `u⁻ × u⁻ × {A' : Ad(g_i⁻¹) A' ∈ b,
//! diag Ad(g_1⁻¹) A' = rev diag Ad(g_2⁻¹) A'}`.

use serde::Serialize;

use crate::borel::graded_w0_conjugated;
use crate::error::{check_dim, FernError, Result};
use crate::exactlin::{Flag, RMatrix};
use crate::par::{self, Parallelism};
use crate::weyl::{self, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalModelPoint {
    pub n: usize,
    pub g1: RMatrix,
    #[serde(rename = "A")]
    pub a: RMatrix,
    pub g2: RMatrix,
}

impl LocalModelPoint {
    /// Validates shapes, invertibility and the point condition.
    pub fn new(g1: RMatrix, a: RMatrix, g2: RMatrix) -> Result<Self> {
        if !is_point(&g1, &a, &g2)? {
            return Err(FernError::Validation("Ad(g_i⁻¹)A is not upper triangular for both i".into()));
        }
        Ok(LocalModelPoint { n: g1.rows(), g1, a, g2 })
    }

    /// `(g_1 B, 0, g_2 B)`.
    pub fn with_zero(g1: RMatrix, g2: RMatrix) -> Result<Self> {
        let n = g1.rows();
        Self::new(g1, RMatrix::zeros(n, n), g2)
    }

    /// `(B, 0, w B)`.
    pub fn standard(w: &Permutation) -> Self {
        let n = w.n();
        Self::with_zero(RMatrix::identity(n), w.matrix()).expect("A = 0 is always a point")
    }

    fn conjugates(&self) -> Result<(RMatrix, RMatrix)> {
        let c1 = self.g1.inverse()?.mul(&self.a)?.mul(&self.g1)?;
        let c2 = self.g2.inverse()?.mul(&self.a)?.mul(&self.g2)?;
        Ok((c1, c2))
    }
}

fn check_shapes(g1: &RMatrix, a: &RMatrix, g2: &RMatrix) -> Result<usize> {
    let n = g1.rows();
    for m in [g1, a, g2] {
        check_dim(n, m.rows())?;
        check_dim(n, m.cols())?;
    }
    Ok(n)
}

/// Whether both `Ad(g_i⁻¹) A` are upper triangular.
pub fn is_point(g1: &RMatrix, a: &RMatrix, g2: &RMatrix) -> Result<bool> {
    check_shapes(g1, a, g2)?;
    for g in [g1, g2] {
        if !g.inverse()?.mul(a)?.mul(g)?.is_upper_triangular() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn stratum(x: &LocalModelPoint) -> Result<Permutation> {
    weyl::relpos(&Flag::of_matrix(&x.g1)?, &Flag::of_matrix(&x.g2)?)
}

/// `diag Ad(g_1⁻¹)A = reverse diag Ad(g_2⁻¹)A`.
pub fn in_kappa_fiber_tw0(x: &LocalModelPoint) -> Result<bool> {
    let (c1, c2) = x.conjugates()?;
    let mut d2 = c2.diagonal();
    d2.reverse();
    Ok(c1.diagonal() == d2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub n: usize,
    pub stratum: Permutation,
    /// `w_0 w⁻¹`.
    pub defect: Permutation,
    /// `dim (G/B × g × G/B) = n(n-1) + n²`.
    pub ambient_dim: usize,
    /// Dimension of the solved space of `A'`.
    pub operator_dim: usize,
    pub fiber_tangent_dim: usize,
    pub formula_dim: usize,
    pub distinct_simple: bool,
    #[serde(rename = "equality_with_Xw0")]
    pub equality_with_xw0: bool,
}

/// Tangent space of `κ⁻¹(T_{w_0})` at a point with `A = 0`, solved directly,
/// alongside the closed form `n(n-1) + #cycles(w_0 w⁻¹) + ℓ(w_0 w⁻¹)`.
pub fn tangent_fiber_dim(x: &LocalModelPoint) -> Result<TangentReport> {
    let n = check_shapes(&x.g1, &x.a, &x.g2)?;
    if !x.a.is_zero() {
        return Err(FernError::Unsupported("tangent spaces are only computed at points with A = 0".into()));
    }
    let g1_inv = x.g1.inverse()?;
    let g2_inv = x.g2.inverse()?;
    // Ad(g⁻¹)A' = g⁻¹ A' g, i.e. conjugation by x = g⁻¹
    let operators = graded_w0_conjugated(&g1_inv, &x.g1, &g2_inv, &x.g2);
    let w = stratum(x)?;
    let defect = &weyl::longest(n)? * &w.inverse();
    let chart = n * (n - 1);
    let fiber_tangent_dim = chart + operators.dim();
    let formula_dim = chart + defect.cycle_count() + defect.length();
    Ok(TangentReport {
        n,
        stratum: w,
        distinct_simple: weyl::is_distinct_simple_product(&defect),
        defect,
        ambient_dim: chart + n * n,
        operator_dim: operators.dim(),
        fiber_tangent_dim,
        formula_dim,
        equality_with_xw0: fiber_tangent_dim == n * n,
    })
}

/// [`tangent_fiber_dim`] at `(B, 0, wB)` for every `w ∈ S_n`, in
/// lexicographic order of `w`.
pub fn tangent_sweep(n: usize, mode: Parallelism) -> Result<Vec<TangentReport>> {
    let all = Permutation::all(n);
    par::map(mode, &all, |w| tangent_fiber_dim(&LocalModelPoint::standard(w))).into_iter().collect()
}
