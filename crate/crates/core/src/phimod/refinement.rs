//! Refinements, their relative position to the Hodge filtration, and the
//! criticality notions built on it.

use serde::Serialize;

use super::admissibility::{coordinate_subspace, induced_jumps, slope_excess};
use super::module::FilteredPhiModule;
use crate::error::{FernError, Result};
use crate::exactlin::{rat, Flag};
use crate::par::{self, Parallelism};
use crate::weyl::{self, Permutation};

/// A φ-stable complete flag, i.e. an ordering of the eigenbasis:
/// `F_i = span{f_{σ(1)}, …, f_{σ(i)}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Refinement {
    pub sigma: Permutation,
}

impl Refinement {
    pub fn new(sigma: Permutation) -> Self {
        Refinement { sigma }
    }

    pub fn flag(&self) -> Flag {
        Flag::of_matrix(&self.sigma.matrix()).expect("permutation matrices are invertible")
    }

    /// `c · r`: `c` permutes the eigenlines in the frame where `r` is the
    /// standard ordering, so the new ordering is `σ ∘ c`. For `r = id` this
    /// is plain relabelling by `c`.
    pub fn act(&self, c: &Permutation) -> Refinement {
        Refinement { sigma: &self.sigma * c }
    }
}

/// All `n!` refinements in lexicographic order.
pub fn refinements(d: &FilteredPhiModule) -> Vec<Refinement> {
    Permutation::all(d.n()).into_iter().map(Refinement::new).collect()
}

fn check_size(d: &FilteredPhiModule, r: &Refinement) -> Result<()> {
    if r.sigma.n() != d.n() {
        return Err(FernError::Dimension { expected: d.n(), found: r.sigma.n() });
    }
    Ok(())
}

/// `relpos(F(r), H_σ)` for each embedding σ.
pub fn relative_position(d: &FilteredPhiModule, r: &Refinement) -> Result<Vec<Permutation>> {
    check_size(d, r)?;
    let f = r.flag();
    d.embeddings().iter().map(|emb| weyl::relpos(&f, &emb.hodge_flag)).collect()
}

pub fn is_noncritical(d: &FilteredPhiModule, r: &Refinement) -> Result<bool> {
    let w0 = weyl::longest(d.n())?;
    Ok(relative_position(d, r)?.iter().all(|w| *w == w0))
}

/// Second route to non-criticality: every `F_i` carries exactly the `i`
/// smallest jumps at every embedding.
pub fn noncritical_by_jumps(d: &FilteredPhiModule, r: &Refinement) -> Result<bool> {
    check_size(d, r)?;
    let order = r.sigma.one_line();
    for i in 1..d.n() {
        let fi = coordinate_subspace(d.n(), &order[..i])?;
        for (k, emb) in d.embeddings().iter().enumerate() {
            if induced_jumps(d, &fi, k)? != emb.jumps[..i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `w_0 · relpos_σ` is a product of distinct simple reflections at every σ.
pub fn is_distinct_transposition_associated(d: &FilteredPhiModule, r: &Refinement) -> Result<bool> {
    let w0 = weyl::longest(d.n())?;
    Ok(relative_position(d, r)?.iter().all(|w| weyl::is_distinct_simple_product(&(&w0 * w))))
}

/// For every `1 <= i < n`:
/// `Σ_{j≤i} v_p(φ_{r(j)}) - (1/e) Σ_σ Σ_{j≤i} j_{j,σ} < (1/e) min_σ (j_{i+1,σ} - j_{i,σ})`.
///
/// On a weakly admissible module this forces `r` to be non-critical; the
/// converse fails.
pub fn numerically_noncritical(d: &FilteredPhiModule, r: &Refinement) -> Result<bool> {
    check_size(d, r)?;
    let order = r.sigma.one_line();
    let e = rat(d.e() as i64);
    for i in 1..d.n() {
        let gap = d
            .embeddings()
            .iter()
            .map(|emb| emb.jumps[i] - emb.jumps[i - 1])
            .min()
            .expect("at least one embedding");
        if slope_excess(d, &order, i) >= rat(gap) / &e {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementRow {
    pub sigma: Permutation,
    pub cycle_notation: String,
    pub relative_positions: Vec<Permutation>,
    pub noncritical: bool,
    pub distinct_transposition_associated: bool,
    pub numerically_noncritical: bool,
}

fn row(d: &FilteredPhiModule, r: &Refinement) -> Result<RefinementRow> {
    let relative_positions = relative_position(d, r)?;
    let w0 = weyl::longest(d.n())?;
    Ok(RefinementRow {
        sigma: r.sigma.clone(),
        cycle_notation: r.sigma.cycle_notation(),
        noncritical: relative_positions.iter().all(|w| *w == w0),
        distinct_transposition_associated: relative_positions
            .iter()
            .all(|w| weyl::is_distinct_simple_product(&(&w0 * w))),
        numerically_noncritical: numerically_noncritical(d, r)?,
        relative_positions,
    })
}

/// Criticality data for all `n!` refinements, in lexicographic order.
pub fn refinement_table(d: &FilteredPhiModule, mode: Parallelism) -> Result<Vec<RefinementRow>> {
    let all = refinements(d);
    par::map(mode, &all, |r| row(d, r)).into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub cycle: Permutation,
    pub cycle_notation: String,
    pub i: usize,
    pub j: usize,
    pub refinement: RefinementRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub base: Permutation,
    pub rows: Vec<OrbitRow>,
    pub all_distinct_transposition_associated: bool,
}

/// The refinements `c · r0` for `c ∈ C_n`, starting from a non-critical `r0`.
pub fn cn_orbit_report(d: &FilteredPhiModule, r0: &Refinement) -> Result<OrbitReport> {
    if !is_noncritical(d, r0)? {
        return Err(FernError::Precondition(format!(
            "base refinement {} is critical",
            r0.sigma.cycle_notation()
        )));
    }
    let rows = weyl::full_cycles_labelled(d.n())?
        .into_iter()
        .map(|(i, j, c)| {
            Ok(OrbitRow {
                cycle_notation: c.cycle_notation(),
                refinement: row(d, &r0.act(&c))?,
                cycle: c,
                i,
                j,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitReport {
        base: r0.sigma.clone(),
        all_distinct_transposition_associated: rows.iter().all(|r| r.refinement.distinct_transposition_associated),
        rows,
    })
}

