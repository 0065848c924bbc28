//! Shared tolerance ledger.
//!
//! Every numeric threshold used across the crate lives here so that callers,
//! tests and the verify suite agree on what "equal" means at each layer.

/// Residual tolerance for spectral decompositions (orthonormality and
/// reconstruction checks).
pub const EIG_TOL: f64 = 1e-10;

/// Slack allowed on feasibility constraints (unit diagonal, spectral box).
pub const FEAS_TOL: f64 = 1e-8;

/// Slack on the optimality certificate: a point is certified when the maximum
/// of the certificate functional stays below `n - 1 + CERT_TOL`.
pub const CERT_TOL: f64 = 1e-6;

/// Off-diagonal Frobenius threshold at which the Jacobi sweep stops,
/// relative to the Frobenius norm of the input.
pub const JACOBI_OFF_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps; hitting it is reported as non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Columns whose residual after Gram-Schmidt falls below this are treated as
/// linearly dependent and dropped.
pub const RANK_TOL: f64 = 1e-12;

/// Eigenvalues of the projector sum within this distance of `n` are counted
/// as the intersection eigenspace.
pub const INTERSECTION_TOL: f64 = 1e-8;

/// Successive-iterate Frobenius tolerance for the feasibility projection.
pub const DYKSTRA_TOL: f64 = 1e-10;

/// Round cap for the feasibility projection.
pub const DYKSTRA_MAX_ROUNDS: usize = 10_000;

/// Residual above which hitting the round cap is an error rather than an
/// accepted approximate projection.
pub const DYKSTRA_FAIL_RESIDUAL: f64 = 1e-6;

/// Ascent stops once the objective improves by less than this per step.
pub const ASCENT_TOL: f64 = 1e-10;

/// Step cap for one ascent run.
pub const ASCENT_MAX_STEPS: usize = 5_000;

/// Armijo sufficient-increase constant for the backtracking line search.
pub const ARMIJO_C: f64 = 1e-4;

/// Backtracking shrink factor.
pub const ARMIJO_SHRINK: f64 = 0.5;

/// Initial trial step of every line search.
pub const ARMIJO_STEP0: f64 = 0.1;
