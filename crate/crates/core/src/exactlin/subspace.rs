use num_traits::{One, Zero};

use super::matrix::RMatrix;
use super::rational::Rational;
use crate::error::{check_dim, Result};

/// A linear subspace of `Q^d`, kept as the nonzero rows of a reduced
/// row-echelon basis. Because the form is canonical, derived equality is
/// equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RMatrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: RMatrix::identity(ambient) }
    }

    /// Span of the given vectors. All must have length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            check_dim(ambient, v.len())?;
            data.extend(v.iter().cloned());
        }
        Ok(Self::from_row_matrix(&RMatrix::new(vectors.len(), ambient, data)?))
    }

    /// Row space of `m`.
    pub fn from_row_matrix(m: &RMatrix) -> Self {
        let (r, rank) = m.rref();
        let ambient = m.cols();
        let data = r.flat()[..rank * ambient].to_vec();
        Subspace { ambient, basis: RMatrix::new(rank, ambient, data).expect("row block") }
    }

    /// Column space of `m`.
    pub fn column_space(m: &RMatrix) -> Self {
        Self::from_row_matrix(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical basis, one vector per row.
    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        check_dim(self.ambient, v.len())?;
        // reduce v against the rref basis; membership iff the remainder is zero
        let pivots = self.basis.pivot_columns();
        let mut rem = v.to_vec();
        for (r, &pc) in pivots.iter().enumerate() {
            let coeff = rem[pc].clone();
            if coeff.is_zero() {
                continue;
            }
            for (x, b) in rem.iter_mut().zip(self.basis.row(r)) {
                *x -= &coeff * b;
            }
        }
        Ok(rem.iter().all(Zero::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        check_dim(self.ambient, other.ambient)?;
        for r in 0..other.dim() {
            if !self.contains(other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        let mut data = self.basis.flat().to_vec();
        data.extend_from_slice(other.basis.flat());
        let stacked = RMatrix::new(self.dim() + other.dim(), self.ambient, data)?;
        Ok(Self::from_row_matrix(&stacked))
    }

    /// Vectors orthogonal to `self` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// `A ∩ B = Ann(Ann(A) + Ann(B))`; exact over any field since the dot
    /// product is nondegenerate.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Null space `{v : M v = 0}` as a subspace of column vectors.
pub fn kernel(m: &RMatrix) -> Subspace {
    let cols = m.cols();
    let (r, rank) = m.rref();
    let pivots = r.pivot_columns();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free).clone();
        }
        vectors.push(v);
    }
    Subspace::span(cols, &vectors).expect("kernel vectors have the right length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rat;
    use crate::error::FernError;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        out[i] = Rational::one();
        out
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&RMatrix::identity(4)).is_zero());
        assert_eq!(kernel(&RMatrix::zeros(2, 3)), Subspace::full(3));
        let k = kernel(&RMatrix::from_ints(&[[1, 1]]));
        assert_eq!(k, Subspace::span(2, &[v(&[1, -1])]).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);

        let e1 = Subspace::span(2, &[e(2, 0)]).unwrap();
        let e2 = Subspace::span(2, &[e(2, 1)]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());

        let p = Subspace::span(3, &[e(3, 0), e(3, 1)]).unwrap();
        let q = Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(p.intersect(&q).unwrap(), Subspace::span(3, &[e(3, 1)]).unwrap());
    }

    #[test]
    fn sum_examples() {
        let a = Subspace::span(3, &[v(&[1, 2, 3])]).unwrap();
        assert_eq!(a.sum(&Subspace::zero(3)).unwrap(), a);
        let e1 = Subspace::span(3, &[e(3, 0)]).unwrap();
        let e2 = Subspace::span(3, &[e(3, 1)]).unwrap();
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::span(3, &[e(3, 0), e(3, 1)]).unwrap());
        let s = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        let t = Subspace::span(2, &[v(&[1, -1])]).unwrap();
        assert_eq!(s.sum(&t).unwrap(), Subspace::full(2));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert_eq!(a.sum(&b), Err(FernError::Dimension { expected: 2, found: 3 }));
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn membership() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert!(a.contains(&v(&[1, 2, 1])).unwrap());
        assert!(!a.contains(&v(&[1, 0, 0])).unwrap());
        assert!(a.contains_subspace(&Subspace::zero(3)).unwrap());
    }
}
