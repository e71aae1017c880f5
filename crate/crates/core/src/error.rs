//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library. Domain violations carry enough context to
/// report the offending value verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tuple length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid group component: {0}")]
    InvalidComponent(String),

    #[error("determinant constraint violated: coordinates sum to {sum}, expected (0,0)")]
    DeterminantConstraint { sum: String },

    #[error("trace constraint violated: t-coordinates sum to {sum}, expected 0")]
    TraceConstraint { sum: String },

    #[error("group label mismatch: {left} vs {right}")]
    LabelMismatch { left: String, right: String },

    #[error("operation requires a GL label, got {0}")]
    NotGl(String),

    #[error("domain not closed under the action: {element} escapes")]
    DomainNotClosed { element: String },

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("model incompatible: {0}")]
    ModelIncompatible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
