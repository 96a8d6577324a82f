//! Seeded random objects for property runs.
//!
//! Each trial draws from its own ChaCha stream (`seed`, `stream = trial`), so
//! a batch gives identical results whether trials run in order or in
//! parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{rat, RMatrix};
use crate::weyl::Permutation;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn nonzero(rng: &mut TrialRng, bound: i64) -> i64 {
    let x = rng.random_range(1..=bound);
    if rng.random_bool(0.5) {
        x
    } else {
        -x
    }
}

/// Invertible `n×n` matrix with entries in `[-bound, bound]`, by rejection.
pub fn random_invertible(rng: &mut TrialRng, n: usize, bound: i64) -> RMatrix {
    loop {
        let rows: Vec<Vec<i64>> =
            (0..n).map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect()).collect();
        let m = RMatrix::from_ints(&rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Invertible upper-triangular matrix: nonzero diagonal, arbitrary entries above.
pub fn random_upper_triangular(rng: &mut TrialRng, n: usize, bound: i64) -> RMatrix {
    let mut m = RMatrix::zeros(n, n);
    for r in 0..n {
        m.set(r, r, rat(nonzero(rng, bound)));
        for c in r + 1..n {
            m.set(r, c, rat(rng.random_range(-bound..=bound)));
        }
    }
    m
}

/// Upper unitriangular matrix.
pub fn random_unipotent_upper(rng: &mut TrialRng, n: usize, bound: i64) -> RMatrix {
    let mut m = RMatrix::identity(n);
    for r in 0..n {
        for c in r + 1..n {
            m.set(r, c, rat(rng.random_range(-bound..=bound)));
        }
    }
    m
}

/// Uniform element of `S_n` (Fisher–Yates).
pub fn random_permutation(rng: &mut TrialRng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation::from_one_line(&images).expect("shuffle of 1..=n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_invertible(&mut trial_rng(7, 3), 4, 3);
        let b = random_invertible(&mut trial_rng(7, 3), 4, 3);
        let c = random_invertible(&mut trial_rng(7, 4), 4, 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn shapes() {
        let mut rng = trial_rng(1, 0);
        let b = random_upper_triangular(&mut rng, 5, 4);
        assert!(b.is_upper_triangular() && b.is_invertible());
        let u = random_unipotent_upper(&mut rng, 5, 4);
        assert!(u.diagonal().iter().all(|x| *x == rat(1)));
        assert_eq!(random_permutation(&mut rng, 6).n(), 6);
    }
}
