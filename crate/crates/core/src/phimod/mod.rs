//! Filtered φ-modules with generic Frobenius: weak admissibility,
//! crystalline subobjects, refinements and their criticality.
//!
//! Conventions: filtration data are jumps (Hodge–Tate weights are their
//! negatives); `t_N(I) = Σ_{i∈I} v_p(φ_i)`; `t_H(S) = (1/e)·Σ_σ` of the jumps
//! induced on `S`; weak admissibility means `t_N = t_H` on the whole module
//! and `t_N >= t_H` on every φ-stable subspace.

mod admissibility;
mod example;
mod module;
mod random;
mod refinement;

pub use admissibility::{
    coordinate_subspace, induced_jumps, is_irreducible, subset_from_mask, sum_criterion_irreducible, t_h, t_n,
    weak_admissibility, weak_admissibility_with, AdmissibilityVerdict, SubsetNumbers,
};
pub use example::{example4, example4_noncritical, EXAMPLE4_JSON};
pub use module::{EigenData, Embedding, EmbeddingSpec, FilteredPhiModule, Genericity, ModuleSpec, StepSpec};
pub use random::{generate_random_wa, GeneratedModule, MAX_ATTEMPTS};
pub use refinement::{
    cn_orbit_report, is_distinct_transposition_associated, is_noncritical, noncritical_by_jumps,
    numerically_noncritical, refinement_table, refinements, relative_position, OrbitReport, OrbitRow, Refinement,
    RefinementRow,
};

#[cfg(test)]
mod tests;
