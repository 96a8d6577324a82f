//! Newton and Hodge numbers, weak admissibility and irreducibility.
//!
//! Under φ-genericity the φ-stable subspaces are exactly the coordinate
//! subspaces `span{f_i : i ∈ I}`, so every sweep below runs over subsets `I`
//! of `{1..n}`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::module::FilteredPhiModule;
use crate::error::{FernError, Result};
use crate::exactlin::{rat, serde_rational, unit_vector, Rational, Subspace};
use crate::par::{self, Parallelism};

/// 1-based sorted index set from a bitmask over `{1..n}`.
pub fn subset_from_mask(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// `span{f_i : i ∈ I}` for 1-based `I`.
pub fn coordinate_subspace(n: usize, subset: &[usize]) -> Result<Subspace> {
    if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > n) {
        return Err(FernError::Domain(format!("index {bad} outside 1..={n}")));
    }
    let vs: Vec<_> = subset.iter().map(|&i| unit_vector(n, i - 1)).collect();
    Subspace::span(n, &vs)
}

/// `t_N(I) = Σ_{i∈I} v_p(φ_i)`.
pub fn t_n(d: &FilteredPhiModule, subset: &[usize]) -> Result<Rational> {
    let vals = d.valuations();
    subset
        .iter()
        .map(|&i| {
            vals.get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| FernError::Domain(format!("index {i} outside 1..={}", d.n())))
        })
        .sum()
}

/// Jumps of the filtration induced on `s` at embedding `emb`, ascending.
///
/// `H_m \ H_{m-1}` carries the jump `j_{n+1-m}`; it is a jump of `s` exactly
/// when `dim(s ∩ H_m)` increases at `m`.
pub fn induced_jumps(d: &FilteredPhiModule, s: &Subspace, emb: usize) -> Result<Vec<i64>> {
    let n = d.n();
    let embedding = d
        .embeddings()
        .get(emb)
        .ok_or_else(|| FernError::Domain(format!("no embedding with index {emb}")))?;
    let mut prev = 0;
    let mut out = Vec::with_capacity(s.dim());
    for m in 1..=n {
        let cur = s.intersect(&embedding.hodge_flag.step(m))?.dim();
        if cur > prev {
            out.push(embedding.jumps[n - m]);
        }
        prev = cur;
    }
    out.reverse();
    Ok(out)
}

/// `t_H(S) = (1/e) Σ_σ Σ (induced jumps of S at σ)`.
pub fn t_h(d: &FilteredPhiModule, s: &Subspace) -> Result<Rational> {
    if s.is_zero() {
        return Err(FernError::Domain("t_H of the zero subspace".into()));
    }
    if s.ambient_dim() != d.n() {
        return Err(FernError::Dimension { expected: d.n(), found: s.ambient_dim() });
    }
    let mut total = 0i64;
    for emb in 0..d.embeddings().len() {
        total += induced_jumps(d, s, emb)?.iter().sum::<i64>();
    }
    Ok(rat(total) / d.e_rat())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetNumbers {
    pub subset: Vec<usize>,
    #[serde(rename = "tN", with = "serde_rational")]
    pub t_n: Rational,
    #[serde(rename = "tH", with = "serde_rational")]
    pub t_h: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    #[serde(rename = "tN_total", with = "serde_rational")]
    pub t_n_total: Rational,
    #[serde(rename = "tH_total", with = "serde_rational")]
    pub t_h_total: Rational,
    pub is_weakly_admissible: bool,
    /// Proper nonzero φ-stable subspaces with `t_N < t_H`.
    pub violations: Vec<SubsetNumbers>,
    /// Proper nonzero φ-stable subspaces with `t_N = t_H`.
    pub crystalline_subobjects: Vec<Vec<usize>>,
    /// Newton and Hodge numbers of every proper nonzero φ-stable subspace,
    /// ordered by bitmask.
    pub subsets: Vec<SubsetNumbers>,
}

pub fn weak_admissibility_with(d: &FilteredPhiModule, mode: Parallelism) -> Result<AdmissibilityVerdict> {
    let n = d.n();
    let full: Vec<usize> = (1..=n).collect();
    let t_n_total = t_n(d, &full)?;
    let t_h_total = t_h(d, &Subspace::full(n))?;
    let masks: Vec<u64> = (1..(1u64 << n) - 1).collect();
    let subsets = par::map(mode, &masks, |&mask| {
        let subset = subset_from_mask(n, mask);
        let s = coordinate_subspace(n, &subset)?;
        Ok(SubsetNumbers { t_n: t_n(d, &subset)?, t_h: t_h(d, &s)?, subset })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let violations: Vec<SubsetNumbers> = subsets.iter().filter(|s| s.t_n < s.t_h).cloned().collect();
    let crystalline_subobjects = subsets.iter().filter(|s| s.t_n == s.t_h).map(|s| s.subset.clone()).collect();
    Ok(AdmissibilityVerdict {
        is_weakly_admissible: t_n_total == t_h_total && violations.is_empty(),
        t_n_total,
        t_h_total,
        violations,
        crystalline_subobjects,
        subsets,
    })
}

pub fn weak_admissibility(d: &FilteredPhiModule) -> Result<AdmissibilityVerdict> {
    weak_admissibility_with(d, Parallelism::default())
}

/// No proper nonzero φ-stable subspace achieves `t_N = t_H`. Requires weak
/// admissibility unless `force` is set.
pub fn is_irreducible(d: &FilteredPhiModule, force: bool) -> Result<bool> {
    let verdict = weak_admissibility(d)?;
    if !verdict.is_weakly_admissible && !force {
        return Err(FernError::Precondition(
            "module is not weakly admissible (pass force to evaluate anyway)".into(),
        ));
    }
    Ok(verdict.crystalline_subobjects.is_empty())
}

/// All values of `j_{a_1} + … + j_{a_k}` over `k`-subsets of `jumps`.
fn subset_sums(jumps: &[i64], k: usize) -> BTreeSet<i64> {
    let n = jumps.len();
    (0..1u64 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| jumps[i]).sum())
        .collect()
}

/// Flag-free sufficient test for irreducibility: no nonempty proper `I` has
/// `Σ_{i∈I} v_p(φ_i)` equal to `(1/e)` times a sum of `|I|` jumps taken at
/// each embedding.
pub fn sum_criterion_irreducible(d: &FilteredPhiModule) -> bool {
    let n = d.n();
    let e = d.e_rat();
    for k in 1..n {
        // Minkowski sum over embeddings of the k-subset sums
        let mut sums: BTreeSet<i64> = [0].into_iter().collect();
        for emb in d.embeddings() {
            let local = subset_sums(&emb.jumps, k);
            sums = sums.iter().flat_map(|a| local.iter().map(move |b| a + b)).collect();
        }
        for mask in (1..(1u64 << n) - 1).filter(|m| m.count_ones() as usize == k) {
            let subset = subset_from_mask(n, mask);
            let scaled = t_n(d, &subset).expect("subset in range") * &e;
            if scaled.is_integer() && sums.contains(&scaled.to_integer().try_into().unwrap_or(i64::MAX)) {
                return false;
            }
        }
    }
    true
}

/// Newton number minus the Hodge number a non-critical refinement would give
/// the first `i` steps: `Σ_{j≤i} v_p(φ_{r(j)}) - (1/e) Σ_σ Σ_{j≤i} j_{j,σ}`.
pub(crate) fn slope_excess(d: &FilteredPhiModule, order: &[usize], i: usize) -> Rational {
    let vals = d.valuations();
    let newton: Rational = order[..i].iter().map(|&k| vals[k - 1].clone()).sum();
    let hodge: i64 = d.embeddings().iter().map(|emb| emb.jumps[..i].iter().sum::<i64>()).sum();
    newton - rat(hodge) / d.e_rat()
}
