use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point or value lies outside the domain of a coordinate map or formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters violate a structural hypothesis (for example `0 < R1 < R2`).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An operation was called on inputs its preconditions exclude.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A candidate critical point does not satisfy the critical equation.
    #[error("critical-equation residual {residual:e} exceeds gate {gate:e}")]
    Residual { residual: f64, gate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
