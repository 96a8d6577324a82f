use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "fernkit", version, about = "Exact checks for Borel envelopes, local models and filtered φ-modules")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    /// Run every sweep on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Verify the Borel envelope decomposition on random or given matrices.
    Envelope(EnvelopeArgs),
    /// Tangent space dimensions of the local model.
    Tangent(TangentArgs),
    /// Permutation combinatorics.
    Weyl(WeylArgs),
    /// Filtered φ-module checks.
    Phimod(PhimodArgs),
    /// The bundled rank-4 example with its golden comparison.
    Example4,
    /// Randomised property run over the envelope, tangent and Weyl suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct EnvelopeArgs {
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON file `{"schema_version": 1, "matrices": [...], "witness": [...]?}`.
    #[arg(long, conflicts_with_all = ["trials", "n", "seed"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TangentArgs {
    /// Sweep `(B, 0, wB)` over all `w` in `S_n`.
    #[arg(long, conflicts_with = "input")]
    pub sweep: Option<usize>,
    /// JSON file `{"schema_version": 1, "g1": ..., "A": ..., "g2": ...}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeylOp {
    Length,
    Cycles,
    Bruhat,
    Distinct,
}

#[derive(Debug, Args, Serialize)]
pub struct WeylArgs {
    #[arg(long, value_enum)]
    pub op: WeylOp,
    /// Size of the symmetric group (required for cycle notation and `cycles`).
    #[arg(long)]
    pub n: Option<usize>,
    /// One-line JSON array such as `[2,1,3]` or cycle notation such as `(1 2)`.
    #[arg(long)]
    pub perm: Option<String>,
    /// Second permutation for `bruhat` (tests `perm <= other`).
    #[arg(long)]
    pub other: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhimodOp {
    Check,
    Refinements,
    Orbit,
    Example4,
}

#[derive(Debug, Args, Serialize)]
pub struct PhimodArgs {
    #[arg(value_enum)]
    pub op: PhimodOp,
    /// Module JSON file.
    #[arg(long, conflicts_with = "random_wa")]
    pub input: Option<PathBuf>,
    /// Generate a random weakly admissible module of this rank instead.
    #[arg(long)]
    pub random_wa: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluate irreducibility even when the module is not weakly admissible.
    #[arg(long)]
    pub force: bool,
    /// Base refinement for `orbit`, one-line or cycle notation.
    #[arg(long)]
    pub refinement: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
