use serde::{Deserialize, Serialize};

use crate::error::{FernError, Result};
use crate::exactlin::{
    is_prime, rat, valuation, Flag, Rational, RationalText, Subspace, Valuation,
};

/// Filtration data at one embedding `σ`: strictly increasing jumps
/// `j_1 < … < j_n` and the Hodge flag `H` in eigenbasis coordinates, where
/// `H_m` is the filtration step carrying the `m` largest jumps (so `H_1` is
/// the deepest line).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub jumps: Vec<i64>,
    pub hodge_flag: Flag,
}

/// How φ-genericity of the eigenvalues was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genericity {
    /// Exact eigenvalues were supplied and checked.
    Verified,
    /// Only valuations were supplied.
    Assumed,
}

/// A filtered φ-module of rank `n` with diagonalised linearised Frobenius.
///
/// Filtration data are stored as jumps; Hodge–Tate weights are their
/// negatives. With this convention `t_N(I) = Σ_{i∈I} v_p(φ_i)` and
/// `t_H(S) = (1/e) Σ_σ (induced jumps of S at σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredPhiModule {
    n: usize,
    p: u64,
    e: u64,
    f: u64,
    eigenvalues: Option<Vec<Rational>>,
    valuations: Vec<Rational>,
    embeddings: Vec<Embedding>,
    genericity: Genericity,
}

/// Either exact Frobenius eigenvalues or just their valuations.
#[derive(Debug, Clone)]
pub enum EigenData {
    Eigenvalues(Vec<Rational>),
    Valuations(Vec<Rational>),
}

fn check_generic(eigenvalues: &[Rational], p: u64, f: u64) -> Result<()> {
    let pf = Rational::from_integer(num_bigint::BigInt::from(p).pow(f as u32));
    for (i, a) in eigenvalues.iter().enumerate() {
        if num_traits::Zero::is_zero(a) {
            return Err(FernError::Validation(format!("eigenvalue φ_{} is zero", i + 1)));
        }
        for (j, b) in eigenvalues.iter().enumerate() {
            if i == j {
                continue;
            }
            let q = a / b;
            if q == rat(1) || q == pf {
                return Err(FernError::Validation(format!(
                    "not φ-generic: φ_{}/φ_{} ∈ {{1, p^f}}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

impl FilteredPhiModule {
    pub fn new(p: u64, e: u64, f: u64, eigen: EigenData, embeddings: Vec<Embedding>) -> Result<Self> {
        if !is_prime(p) {
            return Err(FernError::Validation(format!("p = {p} is not prime")));
        }
        if e == 0 || f == 0 {
            return Err(FernError::Validation("e and f must be at least 1".into()));
        }
        let (eigenvalues, valuations, genericity) = match eigen {
            EigenData::Eigenvalues(vals) => {
                check_generic(&vals, p, f)?;
                let vs = vals
                    .iter()
                    .map(|x| match valuation(x, p)? {
                        Valuation::Finite(v) => Ok(rat(v)),
                        Valuation::Infinite => Err(FernError::Validation("zero eigenvalue".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                (Some(vals), vs, Genericity::Verified)
            }
            EigenData::Valuations(vs) => (None, vs, Genericity::Assumed),
        };
        let n = valuations.len();
        if n == 0 {
            return Err(FernError::Validation("rank must be at least 1".into()));
        }
        if embeddings.len() as u64 != e * f {
            return Err(FernError::Validation(format!(
                "expected e·f = {} embeddings, found {}",
                e * f,
                embeddings.len()
            )));
        }
        for (k, emb) in embeddings.iter().enumerate() {
            if emb.jumps.len() != n || emb.hodge_flag.n() != n {
                return Err(FernError::Dimension { expected: n, found: emb.jumps.len().max(emb.hodge_flag.n()) });
            }
            if emb.jumps.windows(2).any(|w| w[0] >= w[1]) {
                return Err(FernError::Validation(format!(
                    "jumps at embedding {} are not strictly increasing",
                    k + 1
                )));
            }
        }
        Ok(FilteredPhiModule { n, p, e, f, eigenvalues, valuations, embeddings, genericity })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn eigenvalues(&self) -> Option<&[Rational]> {
        self.eigenvalues.as_deref()
    }

    /// `v_p(φ_i)` in eigenbasis order.
    pub fn valuations(&self) -> &[Rational] {
        &self.valuations
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn genericity(&self) -> Genericity {
        self.genericity
    }

    pub(crate) fn e_rat(&self) -> Rational {
        rat(self.e as i64)
    }

    /// Parses the JSON schema (see [`ModuleSpec`]).
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModuleSpec =
            serde_json::from_str(text).map_err(|err| FernError::Parse(err.to_string()))?;
        spec.build()
    }

    pub fn to_spec(&self) -> ModuleSpec {
        ModuleSpec {
            schema_version: Some(1),
            n: self.n,
            p: self.p,
            e: self.e,
            f: self.f,
            eigenvalues: self.eigenvalues.as_ref().map(|v| v.iter().cloned().map(RationalText).collect()),
            eigenvalue_valuations: Some(self.valuations.iter().cloned().map(RationalText).collect()),
            embeddings: self
                .embeddings
                .iter()
                .map(|emb| EmbeddingSpec {
                    jumps: emb.jumps.clone(),
                    hodge_flag: (1..self.n)
                        .map(|m| {
                            StepSpec::Vectors(
                                emb.hodge_flag
                                    .step(m)
                                    .basis_vectors()
                                    .into_iter()
                                    .map(|v| v.into_iter().map(RationalText).collect())
                                    .collect(),
                            )
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// One step of a Hodge flag on input: either the full list of spanning
/// vectors of the step, or a single vector that is added to the previous step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepSpec {
    Vector(Vec<RationalText>),
    Vectors(Vec<Vec<RationalText>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub jumps: Vec<i64>,
    /// Steps `H_1 ⊂ H_2 ⊂ …`, deepest first; the last (full) step may be omitted.
    pub hodge_flag: Vec<StepSpec>,
}

/// JSON form of a [`FilteredPhiModule`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub n: usize,
    pub p: u64,
    #[serde(default = "one")]
    pub e: u64,
    #[serde(default = "one")]
    pub f: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<RationalText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_valuations: Option<Vec<RationalText>>,
    pub embeddings: Vec<EmbeddingSpec>,
}

fn one() -> u64 {
    1
}

fn build_flag(n: usize, steps: &[StepSpec]) -> Result<Flag> {
    let mut spanning: Vec<Vec<Rational>> = Vec::new();
    let mut subspaces = Vec::with_capacity(n);
    for step in steps {
        match step {
            StepSpec::Vector(v) => spanning.push(v.iter().map(|q| q.0.clone()).collect()),
            StepSpec::Vectors(vs) => {
                spanning = vs.iter().map(|v| v.iter().map(|q| q.0.clone()).collect()).collect();
            }
        }
        subspaces.push(Subspace::span(n, &spanning)?);
    }
    if subspaces.len() == n.saturating_sub(1) {
        subspaces.push(Subspace::full(n));
    }
    if subspaces.len() != n {
        return Err(FernError::Validation(format!(
            "hodge_flag needs {} or {} steps, found {}",
            n.saturating_sub(1),
            n,
            steps.len()
        )));
    }
    Flag::new(subspaces)
}

impl ModuleSpec {
    pub fn build(&self) -> Result<FilteredPhiModule> {
        if let Some(v) = self.schema_version {
            if v != 1 {
                return Err(FernError::Validation(format!("unsupported schema_version {v}")));
            }
        }
        let eigen = match (&self.eigenvalues, &self.eigenvalue_valuations) {
            (Some(vals), _) => EigenData::Eigenvalues(vals.iter().map(|q| q.0.clone()).collect()),
            (None, Some(vs)) => EigenData::Valuations(vs.iter().map(|q| q.0.clone()).collect()),
            (None, None) => {
                return Err(FernError::Validation(
                    "one of eigenvalues / eigenvalue_valuations is required".into(),
                ))
            }
        };
        let embeddings = self
            .embeddings
            .iter()
            .map(|emb| Ok(Embedding { jumps: emb.jumps.clone(), hodge_flag: build_flag(self.n, &emb.hodge_flag)? }))
            .collect::<Result<Vec<_>>>()?;
        let module = FilteredPhiModule::new(self.p, self.e, self.f, eigen, embeddings)?;
        if module.n() != self.n {
            return Err(FernError::Dimension { expected: self.n, found: module.n() });
        }
        if let (Some(_), Some(vs)) = (&self.eigenvalues, &self.eigenvalue_valuations) {
            let given: Vec<Rational> = vs.iter().map(|q| q.0.clone()).collect();
            if given != module.valuations() {
                return Err(FernError::Validation("eigenvalue_valuations disagree with eigenvalues".into()));
            }
        }
        Ok(module)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2_json(extra: &str) -> String {
        format!(
            r#"{{"n":2,"p":3,{extra}"embeddings":[{{"jumps":[0,4],"hodge_flag":[[1,1]]}}]}}"#
        )
    }

    #[test]
    fn parses_valuations_only() {
        let d = FilteredPhiModule::from_json(&rank2_json(r#""eigenvalue_valuations":[1,3],"#)).unwrap();
        assert_eq!(d.genericity(), Genericity::Assumed);
        assert_eq!(d.valuations(), &[rat(1), rat(3)]);
        assert_eq!(d.embeddings()[0].hodge_flag.step(1).dim(), 1);
    }

    #[test]
    fn parses_eigenvalues() {
        let d = FilteredPhiModule::from_json(&rank2_json(r#""eigenvalues":["3","27/2"],"#)).unwrap();
        assert_eq!(d.genericity(), Genericity::Verified);
        assert_eq!(d.valuations(), &[rat(1), rat(3)]);
    }

    #[test]
    fn rejects_non_generic() {
        // ratio equal to p^f
        let err = FilteredPhiModule::from_json(&rank2_json(r#""eigenvalues":["3","1"],"#)).unwrap_err();
        assert!(matches!(err, FernError::Validation(_)));
        let err = FilteredPhiModule::from_json(&rank2_json(r#""eigenvalues":["2","2"],"#)).unwrap_err();
        assert!(matches!(err, FernError::Validation(_)));
    }

    #[test]
    fn rejects_bad_jumps_and_flags() {
        let bad = r#"{"n":2,"p":3,"eigenvalue_valuations":[0,1],"embeddings":[{"jumps":[4,4],"hodge_flag":[[1,1]]}]}"#;
        assert!(FilteredPhiModule::from_json(bad).is_err());
        let bad = r#"{"n":2,"p":3,"eigenvalue_valuations":[0,1],"embeddings":[{"jumps":[0,1],"hodge_flag":[[0,0]]}]}"#;
        assert!(FilteredPhiModule::from_json(bad).is_err());
        let bad = r#"{"n":2,"p":4,"eigenvalue_valuations":[0,1],"embeddings":[{"jumps":[0,1],"hodge_flag":[[1,0]]}]}"#;
        assert!(FilteredPhiModule::from_json(bad).is_err());
        let bad = r#"{"n":2,"p":3,"e":2,"eigenvalue_valuations":[0,1],"embeddings":[{"jumps":[0,1],"hodge_flag":[[1,0]]}]}"#;
        assert!(FilteredPhiModule::from_json(bad).is_err());
        assert!(matches!(FilteredPhiModule::from_json("{"), Err(FernError::Parse(_))));
    }

    #[test]
    fn spec_round_trip() {
        let d = FilteredPhiModule::from_json(&rank2_json(r#""eigenvalues":["3","1/9"],"#)).unwrap();
        assert_eq!(d.valuations(), &[rat(1), rat(-2)]);
        let text = serde_json::to_string(&d.to_spec()).unwrap();
        assert_eq!(FilteredPhiModule::from_json(&text).unwrap(), d);
    }
}
