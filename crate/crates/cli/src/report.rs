use std::collections::BTreeMap;
use std::fmt;

use fernkit_core::FernError;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.into(), message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.kind, self.message)
    }
}

impl From<FernError> for CliError {
    fn from(err: FernError) -> Self {
        CliError::new(err.kind(), err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::new("parse", err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a subcommand hands back before it is wrapped into a [`Report`].
pub struct Outcome {
    pub results: Value,
    pub verdicts: BTreeMap<String, bool>,
    pub text: String,
}

impl Outcome {
    pub fn new(results: impl Serialize, text: String) -> CliResult<Self> {
        Ok(Outcome { results: serde_json::to_value(results)?, verdicts: BTreeMap::new(), text })
    }

    pub fn verdict(mut self, name: &str, value: bool) -> Self {
        self.verdicts.insert(name.to_string(), value);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub subcommand: String,
    pub config: Value,
    pub inputs_digest: String,
    pub results: Value,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

/// SHA-256 over the canonical config JSON followed by the raw input bytes.
pub fn digest(config: &Value, input: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(config.to_string().as_bytes());
    hasher.update([0u8]);
    hasher.update(input);
    hex::encode(hasher.finalize())
}

pub fn render_text(report: &Report, body: &str) -> String {
    let mut out = format!("fernkit {}\ninputs digest {}\n\n{}", report.subcommand, report.inputs_digest, body);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    if !report.verdicts.is_empty() {
        out.push_str("\nverdicts\n");
        for (name, value) in &report.verdicts {
            out.push_str(&format!("  {name}: {}\n", if *value { "pass" } else { "FAIL" }));
        }
    }
    if let Some(ms) = report.elapsed_ms {
        out.push_str(&format!("elapsed {ms} ms\n"));
    }
    out
}
