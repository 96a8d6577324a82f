use num_traits::{One, Zero};

use super::matrix::RMatrix;
use super::rational::Rational;
use super::subspace::Subspace;
use crate::error::{FernError, Result};

/// Complete flag `0 ⊊ V_1 ⊊ … ⊊ V_n = Q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    steps: Vec<Subspace>,
}

impl Flag {
    /// Validates dimensions and nesting. `steps` must contain `V_1..V_n`.
    pub fn new(steps: Vec<Subspace>) -> Result<Self> {
        let n = steps.len();
        for (i, s) in steps.iter().enumerate() {
            if s.ambient_dim() != n {
                return Err(FernError::Dimension { expected: n, found: s.ambient_dim() });
            }
            if s.dim() != i + 1 {
                return Err(FernError::Validation(format!(
                    "flag step {} has dimension {}, expected {}",
                    i + 1,
                    s.dim(),
                    i + 1
                )));
            }
            if i > 0 && !s.contains_subspace(&steps[i - 1])? {
                return Err(FernError::Validation(format!("flag step {i} is not contained in step {}", i + 1)));
            }
        }
        Ok(Flag { steps })
    }

    /// `V_i` spanned by the first `i` of the given independent vectors.
    pub fn from_vectors(vectors: &[Vec<Rational>]) -> Result<Self> {
        let n = vectors.len();
        let steps = (1..=n)
            .map(|i| Subspace::span(n, &vectors[..i]))
            .collect::<Result<Vec<_>>>()?;
        if steps.last().is_some_and(|s| s.dim() != n) {
            return Err(FernError::Singular);
        }
        Self::new(steps)
    }

    /// The flag `gB`: `V_i` is spanned by the first `i` columns of `g`.
    pub fn of_matrix(g: &RMatrix) -> Result<Self> {
        if !g.is_square() {
            return Err(FernError::Dimension { expected: g.rows(), found: g.cols() });
        }
        let cols: Vec<Vec<Rational>> = (0..g.cols()).map(|c| g.column(c)).collect();
        Self::from_vectors(&cols)
    }

    pub fn standard(n: usize) -> Self {
        Self::of_matrix(&RMatrix::identity(n)).expect("identity is invertible")
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// `V_i` for `0 <= i <= n`.
    pub fn step(&self, i: usize) -> Subspace {
        if i == 0 {
            Subspace::zero(self.n())
        } else {
            self.steps[i - 1].clone()
        }
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    /// `g·F`.
    pub fn transform(&self, g: &RMatrix) -> Result<Flag> {
        let n = self.n();
        if g.rows() != n || g.cols() != n {
            return Err(FernError::Dimension { expected: n, found: g.rows() });
        }
        if !g.is_invertible() {
            return Err(FernError::Singular);
        }
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let images = s
                    .basis_vectors()
                    .iter()
                    .map(|v| g.mul_vec(v))
                    .collect::<Result<Vec<_>>>()?;
                Subspace::span(n, &images)
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::new(steps)
    }
}

/// Standard basis vector `e_i` (0-based) of `Q^n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}
