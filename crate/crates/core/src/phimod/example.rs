//! The bundled rank-4 example: valuations `(16, 16, 16, 12)`, jumps
//! `0 < 10 < 20 < 30` and Hodge flag
//! `⟨f1+f4⟩ ⊂ ⟨f1+f4, f2+f3⟩ ⊂ ⟨f2, f3, f1+f4⟩`.

use super::module::FilteredPhiModule;
use crate::weyl::Permutation;

pub const EXAMPLE4_JSON: &str = r#"{
  "schema_version": 1,
  "n": 4,
  "p": 2,
  "e": 1,
  "f": 1,
  "eigenvalue_valuations": [16, 16, 16, 12],
  "embeddings": [
    {
      "jumps": [0, 10, 20, 30],
      "hodge_flag": [
        [[1, 0, 0, 1]],
        [[1, 0, 0, 1], [0, 1, 1, 0]],
        [[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]
      ]
    }
  ]
}"#;

pub fn example4() -> FilteredPhiModule {
    FilteredPhiModule::from_json(EXAMPLE4_JSON).expect("bundled fixture is valid")
}

/// The non-critical refinements of [`example4`]: `id, (2 3), (1 4), (1 4)(2 3)`.
pub fn example4_noncritical() -> Vec<Permutation> {
    ["()", "(2 3)", "(1 4)", "(1 4)(2 3)"]
        .iter()
        .map(|s| Permutation::parse_cycles(4, s).expect("literal cycles"))
        .collect()
}
