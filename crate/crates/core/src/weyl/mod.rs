//! Combinatorics of the Weyl group `S_n` of `GL_n`: lengths, Bruhat order,
//! reduced words, the set of full cycles `c_{i,j}`, and the relative
//! position of two complete flags.

mod permutation;

use std::collections::BTreeSet;

pub use permutation::Permutation;

use crate::error::{FernError, Result};
use crate::exactlin::Flag;

pub fn length(w: &Permutation) -> usize {
    w.length()
}

/// The longest element `w_0 : i ↦ n+1-i`.
pub fn longest(n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(FernError::Domain("S_0 has no longest element".into()));
    }
    Ok(Permutation::from_zero_based((0..n).rev().collect()))
}

/// The cycle `c_{i,j} = (i, i-1, …, j+1, j)` for `n >= i >= j >= 1`:
/// `k ↦ k-1` for `j < k <= i`, `j ↦ i`, everything else fixed.
pub fn full_cycle(n: usize, i: usize, j: usize) -> Result<Permutation> {
    if j == 0 || i < j || i > n {
        return Err(FernError::Domain(format!("c_{{{i},{j}}} needs n >= i >= j >= 1 (n = {n})")));
    }
    let mut images: Vec<usize> = (0..n).collect();
    for k in j..i {
        images[k] = k - 1;
    }
    images[j - 1] = i - 1;
    Ok(Permutation::from_zero_based(images))
}

/// The full cycles `c_{i,j}`, `i >= j`, with every `c_{i,i}` collapsed to a
/// single identity. The identity comes first, then `c_{i,j}` for `i > j` in
/// lexicographic order of `(i, j)`. There are `1 + n(n-1)/2` of them.
pub fn full_cycles(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(FernError::Domain("full cycles need n >= 1".into()));
    }
    let mut out = vec![Permutation::identity(n)];
    for i in 1..=n {
        for j in 1..i {
            out.push(full_cycle(n, i, j)?);
        }
    }
    Ok(out)
}

/// Labelled variant of [`full_cycles`]: `(i, j, c_{i,j})`, with `(1, 1)`
/// standing for the identity.
pub fn full_cycles_labelled(n: usize) -> Result<Vec<(usize, usize, Permutation)>> {
    let mut out = vec![(1, 1, Permutation::identity(n))];
    for i in 1..=n {
        for j in 1..i {
            out.push((i, j, full_cycle(n, i, j)?));
        }
    }
    Ok(out)
}

/// `#{a <= i : w(a) <= j}` for all `0 <= i, j <= n`.
fn rank_table(w: &Permutation) -> Vec<Vec<usize>> {
    let n = w.n();
    let mut t = vec![vec![0; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            let hit = usize::from(w.image(i) == j);
            t[i][j] = t[i - 1][j] + t[i][j - 1] - t[i - 1][j - 1] + hit;
        }
    }
    t
}

/// Bruhat order via the rank-matrix criterion: `u <= w` iff every entry of
/// `u`'s rank table dominates the corresponding entry of `w`'s.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    if u.n() != w.n() {
        return Err(FernError::Domain(format!("Bruhat comparison of S_{} with S_{}", u.n(), w.n())));
    }
    let (tu, tw) = (rank_table(u), rank_table(w));
    Ok(tu.iter().zip(&tw).all(|(ru, rw)| ru.iter().zip(rw).all(|(a, b)| a >= b)))
}

/// A reduced word `[a_1, …, a_k]` with `w = s_{a_1} ⋯ s_{a_k}`, found by
/// repeatedly stripping the leftmost right descent.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut cur = w.one_line();
    let mut letters = Vec::with_capacity(w.length());
    while let Some(i) = (1..cur.len()).find(|&i| cur[i - 1] > cur[i]) {
        cur.swap(i - 1, i);
        letters.push(i);
    }
    letters.reverse();
    letters
}

/// Indices of the simple reflections occurring in any reduced word of `w`.
pub fn support(w: &Permutation) -> BTreeSet<usize> {
    reduced_word(w).into_iter().collect()
}

/// Whether `w` is a product of pairwise distinct simple reflections.
///
/// Such a product is automatically reduced, so the test is
/// `length(w) == |support(w)|`.
pub fn is_distinct_simple_product(w: &Permutation) -> bool {
    support(w).len() == w.length()
}

pub fn cycle_count(w: &Permutation) -> usize {
    w.cycle_count()
}

/// Dimension table `d[i][j] = dim(F_i ∩ G_j)`, `0 <= i, j <= n`.
pub fn intersection_table(f: &Flag, g: &Flag) -> Result<Vec<Vec<usize>>> {
    let n = f.n();
    if g.n() != n {
        return Err(FernError::Domain(format!("relative position of flags in Q^{n} and Q^{}", g.n())));
    }
    let mut d = vec![vec![0; n + 1]; n + 1];
    for i in 1..=n {
        let fi = f.step(i);
        for j in 1..=n {
            d[i][j] = fi.intersect(&g.step(j))?.dim();
        }
    }
    Ok(d)
}

/// Relative position of two complete flags: the unique `w` such that
/// `(F, G)` is in the `GL_n`-orbit of `(E, w·E)`, where `E` is the standard
/// flag. Read off the second differences of `dim(F_i ∩ G_j)`: `w(j) = i`
/// exactly where the difference is one. `relpos(E, w_0 E) = w_0` and
/// `relpos(w_1 E, w_2 E) = w_1⁻¹ w_2`.
pub fn relpos(f: &Flag, g: &Flag) -> Result<Permutation> {
    let n = f.n();
    let d = intersection_table(f, g)?;
    let mut images = vec![usize::MAX; n];
    for j in 1..=n {
        for i in 1..=n {
            let jump = d[i][j] + d[i - 1][j - 1];
            let rest = d[i - 1][j] + d[i][j - 1];
            if jump == rest + 1 {
                images[j - 1] = i;
            }
        }
    }
    Permutation::from_one_line(&images)
        .map_err(|_| FernError::Validation("intersection table is not a permutation table".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RMatrix;

    fn p(xs: &[usize]) -> Permutation {
        Permutation::from_one_line(xs).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(length(&Permutation::identity(5)), 0);
        for n in 1..=7 {
            assert_eq!(length(&longest(n).unwrap()), n * (n - 1) / 2);
        }
        assert_eq!(length(&p(&[2, 1, 3])), 1);
    }

    #[test]
    fn longest_examples() {
        assert_eq!(longest(1).unwrap(), Permutation::identity(1));
        assert_eq!(longest(2).unwrap().one_line(), vec![2, 1]);
        let w0 = longest(4).unwrap();
        assert_eq!(w0.one_line(), vec![4, 3, 2, 1]);
        assert_eq!(w0.length(), 6);
        assert!((&w0 * &w0).is_identity());
        assert!(longest(0).is_err());
    }

    #[test]
    fn full_cycle_sets() {
        let c2 = full_cycles(2).unwrap();
        assert_eq!(c2, vec![Permutation::identity(2), Permutation::parse_cycles(2, "(2 1)").unwrap()]);
        let c3 = full_cycles(3).unwrap();
        let expected: BTreeSet<Permutation> = ["()", "(2 1)", "(3 2)", "(3 2 1)"]
            .iter()
            .map(|s| Permutation::parse_cycles(3, s).unwrap())
            .collect();
        assert_eq!(c3.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(full_cycles(5).unwrap().len(), 11);
        assert!(full_cycles(0).is_err());
        assert!(full_cycle(3, 1, 2).is_err());
    }

    #[test]
    fn full_cycle_matches_cycle_notation() {
        assert_eq!(full_cycle(4, 4, 2).unwrap(), Permutation::parse_cycles(4, "(4 3 2)").unwrap());
        assert_eq!(full_cycle(4, 3, 3).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn bruhat_examples() {
        let w0 = longest(3).unwrap();
        for w in Permutation::all(3) {
            assert!(bruhat_leq(&Permutation::identity(3), &w).unwrap());
            if w != w0 {
                assert!(!bruhat_leq(&w0, &w).unwrap());
            }
        }
        let s1 = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let t13 = Permutation::parse_cycles(3, "(1 3)").unwrap();
        assert!(bruhat_leq(&s1, &t13).unwrap());
        assert!(!bruhat_leq(&t13, &s1).unwrap());
        assert!(bruhat_leq(&s1, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn reduced_word_examples() {
        assert!(reduced_word(&Permutation::identity(4)).is_empty());
        assert_eq!(reduced_word(&p(&[1, 3, 2])), vec![2]);
        let w0 = longest(3).unwrap();
        let word = reduced_word(&w0);
        assert_eq!(word.len(), 3);
        let prod = word
            .iter()
            .fold(Permutation::identity(3), |acc, &k| &acc * &Permutation::simple(3, k).unwrap());
        assert_eq!(prod, w0);
    }

    #[test]
    fn distinct_simple_examples() {
        assert!(is_distinct_simple_product(&Permutation::identity(3)));
        for k in 1..5 {
            assert!(is_distinct_simple_product(&Permutation::simple(5, k).unwrap()));
        }
        assert!(!is_distinct_simple_product(&longest(3).unwrap()));
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(cycle_count(&Permutation::identity(4)), 4);
        assert_eq!(cycle_count(&p(&[2, 1, 3, 4])), 3);
        assert_eq!(cycle_count(&longest(3).unwrap()), 2);
    }

    #[test]
    fn relpos_examples() {
        let e = Flag::standard(4);
        assert!(relpos(&e, &e).unwrap().is_identity());
        let w0 = longest(4).unwrap();
        let opp = Flag::of_matrix(&w0.matrix()).unwrap();
        assert_eq!(relpos(&e, &opp).unwrap(), w0);

        let w1 = p(&[2, 4, 1, 3]);
        let w2 = p(&[3, 1, 2, 4]);
        let f1 = Flag::of_matrix(&w1.matrix()).unwrap();
        let f2 = Flag::of_matrix(&w2.matrix()).unwrap();
        assert_eq!(relpos(&f1, &f2).unwrap(), &w1.inverse() * &w2);
    }

    #[test]
    fn relpos_size_mismatch() {
        assert!(relpos(&Flag::standard(2), &Flag::standard(3)).is_err());
    }

    #[test]
    fn relpos_is_gl_invariant_on_a_sample() {
        let g = RMatrix::from_ints(&[[1, 2, 0], [0, 1, 1], [3, 0, 1]]);
        let f = Flag::of_matrix(&RMatrix::from_ints(&[[1, 1, 0], [2, 0, 1], [0, 1, 1]])).unwrap();
        let h = Flag::of_matrix(&RMatrix::from_ints(&[[0, 1, 1], [1, 1, 0], [1, 0, 2]])).unwrap();
        assert_eq!(
            relpos(&f, &h).unwrap(),
            relpos(&f.transform(&g).unwrap(), &h.transform(&g).unwrap()).unwrap()
        );
    }
}
