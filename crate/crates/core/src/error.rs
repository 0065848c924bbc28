//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by any layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The Jacobi sweep hit its cap before the off-diagonal mass was gone.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNoConvergence { sweeps: usize, residual: f64 },

    /// A matrix required to be positive semidefinite is materially not.
    #[error("matrix is not positive semidefinite (lambda_min = {lambda_min:.6e})")]
    NotPsd { lambda_min: f64 },

    /// Incompatible shapes or ambient dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter fell outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix violates the feasibility constraints it was claimed to satisfy.
    #[error("infeasible matrix: {0}")]
    Infeasible(String),

    /// The feasibility projection hit its round cap with a large residual.
    #[error("feasibility projection stalled after {rounds} rounds (residual {residual:.3e})")]
    ProjectionStalled { rounds: usize, residual: f64 },

    /// The measured Friedrichs number exceeds the rate parameter.
    #[error("measured Friedrichs number {measured:.9} exceeds rate parameter c = {c}")]
    RatePrecondition { measured: f64, c: f64 },

    /// The rotating-lines probe was evaluated outside its regime.
    #[error("lower-bound probe out of range: {0}")]
    ProbeOutOfRange(String),

    /// An internal cross-validation between two independent routes failed.
    #[error("self-check failed: {0}")]
    SelfCheck(String),

    /// (De)serialization failure.
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
