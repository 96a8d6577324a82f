use fernkit_core::exactlin::RMatrix;
use fernkit_core::localmodel::{stratum, tangent_fiber_dim, tangent_sweep, LocalModelPoint};
use fernkit_core::par::Parallelism;
use fernkit_core::sampling::{random_invertible, random_permutation, random_upper_triangular, trial_rng};
use fernkit_core::weyl;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closure_lemma(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let b = random_upper_triangular(&mut rng, n, 3);
        let (w1, w2) = (random_permutation(&mut rng, n), random_permutation(&mut rng, n));
        let x = LocalModelPoint::with_zero(w1.matrix(), b.mul(&w2.matrix()).unwrap()).unwrap();
        let w = stratum(&x).unwrap();
        prop_assert!(weyl::bruhat_leq(&(&w1.inverse() * &w2), &w).unwrap());
    }

    #[test]
    fn tangent_dimension_is_conjugation_invariant(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 1);
        let g = random_invertible(&mut rng, n, 2);
        let w = random_permutation(&mut rng, n);
        let base = tangent_fiber_dim(&LocalModelPoint::standard(&w)).unwrap();
        let moved = LocalModelPoint::with_zero(g.clone(), g.mul(&w.matrix()).unwrap()).unwrap();
        let report = tangent_fiber_dim(&moved).unwrap();
        prop_assert_eq!(report.fiber_tangent_dim, base.fiber_tangent_dim);
        prop_assert_eq!(report.stratum, w);
    }
}

#[test]
fn sweep_matches_formula() {
    for n in 1..=4 {
        let seq = tangent_sweep(n, Parallelism::Sequential).unwrap();
        assert_eq!(seq, tangent_sweep(n, Parallelism::Parallel).unwrap());
        for r in &seq {
            assert_eq!(r.fiber_tangent_dim, r.formula_dim);
            assert_eq!(r.equality_with_xw0, r.distinct_simple);
        }
    }
}

#[test]
fn nonzero_a_is_unsupported() {
    let a = RMatrix::from_ints(&[[0, 1], [0, 0]]);
    let x = LocalModelPoint::new(RMatrix::identity(2), a, RMatrix::identity(2)).unwrap();
    assert_eq!(tangent_fiber_dim(&x).unwrap_err().kind(), "unsupported");
}
