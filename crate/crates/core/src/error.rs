use thiserror::Error;

/// Errors produced by the library. Every fallible operation returns one of these
/// instead of panicking on bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FernError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not invertible")]
    Singular,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("random generator exhausted after {attempts} attempts")]
    GeneratorExhausted { attempts: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl FernError {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            FernError::Dimension { .. } => "dimension",
            FernError::Singular => "invertibility",
            FernError::Domain(_) => "domain",
            FernError::Validation(_) => "validation",
            FernError::Unsupported(_) => "unsupported",
            FernError::Precondition(_) => "precondition",
            FernError::GeneratorExhausted { .. } => "generator_exhausted",
            FernError::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, FernError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(FernError::Dimension { expected, found })
    }
}
