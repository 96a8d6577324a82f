use super::*;
use crate::exactlin::{rat, Flag, Subspace};
use crate::par::Parallelism;
use crate::weyl::{self, Permutation};

fn cyc(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

fn module(vals: &[i64], jumps: &[i64], flag: &[&[i64]]) -> FilteredPhiModule {
    let n = vals.len();
    let mut vs: Vec<_> = flag.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
    let completion = (0..n)
        .map(|i| crate::exactlin::unit_vector(n, i))
        .find(|u| !Subspace::span(n, &vs).unwrap().contains(u).unwrap())
        .unwrap();
    vs.push(completion);
    let hodge_flag = Flag::from_vectors(&vs).unwrap();
    FilteredPhiModule::new(
        5,
        1,
        1,
        EigenData::Valuations(vals.iter().map(|&v| rat(v)).collect()),
        vec![Embedding { jumps: jumps.to_vec(), hodge_flag }],
    )
    .unwrap()
}

#[test]
fn example4_numbers() {
    let d = example4();
    assert_eq!(t_n(&d, &[1, 2, 3, 4]).unwrap(), rat(60));
    assert_eq!(t_n(&d, &[1, 4]).unwrap(), rat(28));
    assert_eq!(t_n(&d, &[]).unwrap(), rat(0));
    assert_eq!(t_h(&d, &Subspace::full(4)).unwrap(), rat(60));
    assert_eq!(t_h(&d, &coordinate_subspace(4, &[1]).unwrap()).unwrap(), rat(0));
    assert_eq!(t_h(&d, &coordinate_subspace(4, &[1, 4]).unwrap()).unwrap(), rat(30));
    assert!(t_h(&d, &Subspace::zero(4)).is_err());
}

#[test]
fn example4_admissibility() {
    let d = example4();
    let v = weak_admissibility(&d).unwrap();
    assert!(!v.is_weakly_admissible);
    assert_eq!(v.violations.len(), 1);
    assert_eq!(v.violations[0].subset, vec![1, 4]);
    assert_eq!((v.violations[0].t_n.clone(), v.violations[0].t_h.clone()), (rat(28), rat(30)));
    assert!(v.crystalline_subobjects.is_empty());
    assert_eq!(v.subsets.len(), 14);
    assert!(is_irreducible(&d, false).is_err());
    assert!(is_irreducible(&d, true).unwrap());
    assert!(sum_criterion_irreducible(&d));
}

#[test]
fn example4_refinements() {
    let d = example4();
    let table = refinement_table(&d, Parallelism::Sequential).unwrap();
    assert_eq!(table.len(), 24);
    let nc: Vec<_> = table.iter().filter(|r| r.noncritical).map(|r| r.sigma.clone()).collect();
    let mut expected = example4_noncritical();
    expected.sort();
    assert_eq!(nc, expected);
    for r in &table {
        let by_jumps = noncritical_by_jumps(&d, &Refinement::new(r.sigma.clone())).unwrap();
        assert_eq!(by_jumps, r.noncritical);
        if r.noncritical {
            assert!(r.distinct_transposition_associated);
        }
    }
    for s in ["(1 2)", "(3 4)"] {
        assert!(!is_noncritical(&d, &Refinement::new(cyc(4, s))).unwrap());
    }
    let id = Refinement::new(Permutation::identity(4));
    assert!(!numerically_noncritical(&d, &id).unwrap());
}

#[test]
fn example4_orbit() {
    let d = example4();
    let report = cn_orbit_report(&d, &Refinement::new(Permutation::identity(4))).unwrap();
    assert_eq!(report.rows.len(), 7);
    assert!(report.all_distinct_transposition_associated);
    assert!(report.rows[0].refinement.noncritical);
    assert!(matches!(
        cn_orbit_report(&d, &Refinement::new(cyc(4, "(1 2)"))),
        Err(crate::FernError::Precondition(_))
    ));
    for base in example4_noncritical() {
        let r = cn_orbit_report(&d, &Refinement::new(base)).unwrap();
        assert!(r.all_distinct_transposition_associated);
    }
}

#[test]
fn rank_one() {
    let d = module(&[7], &[7], &[]);
    let v = weak_admissibility(&d).unwrap();
    assert!(v.is_weakly_admissible);
    assert!(v.subsets.is_empty());
    assert!(is_irreducible(&d, false).unwrap());
    assert!(sum_criterion_irreducible(&d));
    assert_eq!(refinements(&d).len(), 1);
}

#[test]
fn direct_sum_of_rank_one() {
    // f1 carries jump 0, f2 carries jump 3
    let d = module(&[0, 3], &[0, 3], &[&[0, 1]]);
    let v = weak_admissibility(&d).unwrap();
    assert!(v.is_weakly_admissible);
    assert_eq!(v.crystalline_subobjects, vec![vec![1], vec![2]]);
    assert!(!is_irreducible(&d, false).unwrap());
    assert!(!sum_criterion_irreducible(&d));
}

#[test]
fn rank_two_sum_criterion() {
    let d = module(&[5, -5], &[-7, 7], &[&[1, 1]]);
    assert!(weak_admissibility(&d).unwrap().is_weakly_admissible);
    assert!(sum_criterion_irreducible(&d));
    assert!(is_irreducible(&d, false).unwrap());
}

#[test]
fn rank_two_numerically_noncritical() {
    let d = module(&[0, 100], &[0, 100], &[&[1, 1]]);
    assert!(weak_admissibility(&d).unwrap().is_weakly_admissible);
    let id = Refinement::new(Permutation::identity(2));
    assert!(numerically_noncritical(&d, &id).unwrap());
    assert!(is_noncritical(&d, &id).unwrap());
    let report = cn_orbit_report(&d, &id).unwrap();
    assert_eq!(report.rows.len(), 2);
    assert!(report.all_distinct_transposition_associated);
}

#[test]
fn irreducible_without_sum_criterion() {
    let d = module(&[10, 10, 10], &[0, 10, 20], &[&[1, 1, 1], &[0, 1, 2]]);
    assert!(weak_admissibility(&d).unwrap().is_weakly_admissible);
    assert!(is_irreducible(&d, false).unwrap());
    assert!(!sum_criterion_irreducible(&d));
}

#[test]
fn opposite_flag_gives_longest_element() {
    let d = module(&[0, 1, 2], &[0, 1, 2], &[&[0, 0, 1], &[0, 1, 0]]);
    let rp = relative_position(&d, &Refinement::new(Permutation::identity(3))).unwrap();
    assert_eq!(rp, vec![weyl::longest(3).unwrap()]);
}

#[test]
fn refinement_counts_and_action() {
    let d = module(&[0, 1, 2], &[0, 1, 2], &[&[0, 0, 1], &[0, 1, 0]]);
    let all = refinements(&d);
    assert_eq!(all.len(), 6);
    let r = Refinement::new(cyc(3, "(1 2 3)"));
    let images: std::collections::BTreeSet<_> = Permutation::all(3).iter().map(|c| r.act(c)).collect();
    assert_eq!(images.len(), 6);
    assert_eq!(r.act(&Permutation::identity(3)), r);
}

#[test]
fn generator() {
    for n in 1..=5 {
        let a = generate_random_wa(n, 1).unwrap();
        let b = generate_random_wa(n, 1).unwrap();
        assert_eq!(a.module, b.module);
        assert_eq!(a.attempts, b.attempts);
        assert_eq!(a.module.genericity(), Genericity::Verified);
        assert!(weak_admissibility(&a.module).unwrap().is_weakly_admissible);
    }
    assert!(generate_random_wa(0, 1).is_err());
    assert!(generate_random_wa(7, 1).is_err());
}

#[test]
fn json_round_trip() {
    let d = example4();
    let text = serde_json::to_string(&d.to_spec()).unwrap();
    assert_eq!(FilteredPhiModule::from_json(&text).unwrap(), d);
    assert_eq!(d.genericity(), Genericity::Assumed);
}
