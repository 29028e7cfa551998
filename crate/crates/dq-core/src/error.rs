use thiserror::Error;

/// Errors raised by exact computations.
///
/// The CLI maps these onto exit codes: parse errors are usage errors,
/// precondition failures are mathematical errors, and invariant breaches
/// signal a bug in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DqError {
    #[error("variable context mismatch: {0}")]
    ContextMismatch(String),

    #[error("truncation order mismatch: left has order {left}, right has order {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("gauge transport failed at h-order {order}: {message}")]
    GaugeOrder { order: usize, message: String },

    #[error("centralizer construction failed at h-order {order}: {message}")]
    CentralizerOrder { order: usize, message: String },

    #[error("non-proper intersection: {0}")]
    NonProperIntersection(String),

    #[error("symplectic context required: {0}")]
    SymplecticContext(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, DqError>;
