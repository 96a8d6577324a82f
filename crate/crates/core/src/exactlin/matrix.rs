use std::fmt;
use std::ops::Index;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, rat, Rational, RationalText};
use crate::error::{check_dim, FernError, Result};

/// Dense matrix over the rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Row-pivoted LU factorisation `A = P·L·U` of a square matrix.
///
/// `perm[k]` is the row of `A` that ended up in row `k`, so `P` is the
/// permutation matrix sending `e_k` to `e_{perm[k]}`. `L` is unit lower
/// triangular and `U` upper triangular.
#[derive(Debug, Clone)]
pub struct PluFactors {
    pub perm: Vec<usize>,
    pub lower: RMatrix,
    pub upper: RMatrix,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(RMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            data.extend(row);
        }
        Ok(RMatrix { rows: n_rows, cols, data })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer matrix literal")
    }

    pub fn diagonal_from(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Reassembles an `n×n` matrix from its row-major flattening.
    pub fn from_flat(n: usize, flat: Vec<Rational>) -> Result<Self> {
        Self::new(n, n, flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries; for an `n×n` matrix this is its image in `Q^{n²}`.
    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RMatrix) -> Result<RMatrix> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &RMatrix) -> Result<RMatrix> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(RMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &RMatrix) -> Result<RMatrix> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(RMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &Rational) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rational {
        self.diagonal().into_iter().sum()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    /// `self · m · self⁻¹`, given the inverse.
    pub fn conjugate(&self, m: &RMatrix, inverse: &RMatrix) -> Result<RMatrix> {
        self.mul(m)?.mul(inverse)
    }

    /// Reduced row-echelon form (leading ones, zero rows last) and the rank.
    pub fn rref(&self) -> (RMatrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Column indices of the pivots of a matrix already in rref.
    pub(crate) fn pivot_columns(&self) -> Vec<usize> {
        (0..self.rows)
            .filter_map(|r| (0..self.cols).find(|&c| !self.get(r, c).is_zero()))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn rref_in_place(&mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self.get(pivot_row, col).recip();
            for c in col..cols {
                let idx = pivot_row * cols + c;
                self.data[idx] = &self.data[idx] * &inv;
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let delta = &factor * self.get(pivot_row, c);
                    if !delta.is_zero() {
                        self.data[r * cols + c] -= delta;
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn inverse(&self) -> Result<RMatrix> {
        if !self.is_square() {
            return Err(FernError::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, _) = aug.rref();
        // left block must be the identity
        for i in 0..n {
            if !red.get(i, i).is_one() {
                return Err(FernError::Singular);
            }
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `A = P·L·U` with partial pivoting on the first nonzero entry of each
    /// column (ties go to the topmost candidate).
    pub fn plu(&self) -> Result<PluFactors> {
        if !self.is_square() {
            return Err(FernError::Dimension { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut u = self.clone();
        let mut lower = Self::zeros(n, n);
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let found = (k..n).find(|&r| !u.get(r, k).is_zero()).ok_or(FernError::Singular)?;
            if found != k {
                u.swap_rows(k, found);
                lower.swap_rows(k, found);
                perm.swap(k, found);
            }
            let pivot = u.get(k, k).clone();
            for r in k + 1..n {
                let factor = u.get(r, k) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in k..n {
                    let delta = &factor * u.get(k, c);
                    let idx = r * n + c;
                    u.data[idx] -= delta;
                }
                lower.set(r, k, factor);
            }
        }
        for i in 0..n {
            lower.set(i, i, Rational::one());
        }
        Ok(PluFactors { perm, lower, upper: u })
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        self.get(r, c)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq((0..self.rows).map(|r| {
            self.row(r).iter().map(|q| RationalText(q.clone())).collect::<Vec<_>>()
        }))
    }
}

impl<'de> Deserialize<'de> for RMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<RationalText>>::deserialize(d)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect();
        RMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
