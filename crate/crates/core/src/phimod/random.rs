//! Seeded generator of weakly admissible, φ-generic, Hodge–Tate regular
//! modules with a single embedding (`e = f = 1`).

use rand::Rng;

use super::admissibility::weak_admissibility_with;
use super::module::{EigenData, Embedding, FilteredPhiModule};
use crate::error::{FernError, Result};
use crate::exactlin::{rat, Flag, Rational};
use crate::par::Parallelism;
use crate::sampling::{random_unipotent_upper, trial_rng, TrialRng};
use crate::weyl;

pub const MAX_ATTEMPTS: usize = 10_000;
const PRIME: u64 = 3;

#[derive(Debug, Clone)]
pub struct GeneratedModule {
    pub module: FilteredPhiModule,
    /// Candidates drawn, including the accepted one.
    pub attempts: usize,
}

fn candidate(rng: &mut TrialRng, n: usize) -> Result<FilteredPhiModule> {
    let mut jumps = Vec::with_capacity(n);
    let mut cur: i64 = rng.random_range(-10..=10);
    for _ in 0..n {
        jumps.push(cur);
        cur += rng.random_range(1..=50);
    }
    let total: i64 = jumps.iter().sum();
    // split the total into n parts, each at least the smallest jump
    let slack = total - n as i64 * jumps[0];
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.random_range(0..=slack)).collect();
    cuts.push(0);
    cuts.push(slack);
    cuts.sort_unstable();
    let valuations: Vec<i64> = cuts.windows(2).map(|w| jumps[0] + w[1] - w[0]).collect();

    // distinct p-adic units times powers of p keep every ratio away from {1, p}
    let p = Rational::from_integer(PRIME.into());
    let eigenvalues: Vec<Rational> = valuations
        .iter()
        .enumerate()
        .map(|(i, &v)| rat(1 + PRIME as i64 * i as i64) * num_traits::pow::Pow::pow(&p, v as i32))
        .collect();

    let opposite = weyl::longest(n)?.matrix();
    let g = random_unipotent_upper(rng, n, 3).mul(&opposite)?;
    let embedding = Embedding { jumps, hodge_flag: Flag::of_matrix(&g)? };
    FilteredPhiModule::new(PRIME, 1, 1, EigenData::Eigenvalues(eigenvalues), vec![embedding])
}

/// Rejection-samples until the candidate is weakly admissible.
pub fn generate_random_wa(n: usize, seed: u64) -> Result<GeneratedModule> {
    if !(1..=6).contains(&n) {
        return Err(FernError::Domain(format!("random modules need 1 <= n <= 6, got {n}")));
    }
    let mut rng = trial_rng(seed, n as u64);
    for attempt in 1..=MAX_ATTEMPTS {
        let module = candidate(&mut rng, n)?;
        if weak_admissibility_with(&module, Parallelism::Sequential)?.is_weakly_admissible {
            return Ok(GeneratedModule { module, attempts: attempt });
        }
    }
    Err(FernError::GeneratorExhausted { attempts: MAX_ATTEMPTS })
}
