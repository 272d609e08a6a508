use thiserror::Error;

/// Library-level error type. The CLI maps these onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mixed composition algebras: {0} vs {1}")]
    AlgebraMismatch(&'static str, &'static str),
    #[error("jordan kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("operation requires the {needed} scalar domain, got {got}")]
    DomainRestriction { needed: &'static str, got: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-invertible scalar division in the Int domain: {0} / {1}")]
    NonInvertibleDivision(String, String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
