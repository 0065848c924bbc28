//! Toolkit for the method of cyclic alternating projections on
//! finite-dimensional complex Hilbert spaces.
//!
//! The crate has five layers:
//!
//! * [`linalg`] — self-contained dense complex linear algebra (Hermitian
//!   eigendecomposition via cyclic Jacobi, operator norms, spectral clipping,
//!   Gram factorization).
//! * [`subspaces`] — systems of subspaces, their projectors, the intersection
//!   projector and the Dixmier/Friedrichs numbers.
//! * [`map_sim`] — the cyclic-projection iteration itself, with error traces
//!   and per-sweep rate checks.
//! * [`fn_solver`] — the worst-case one-sweep contraction `f_n(c)` solved as a
//!   constrained matrix optimization over spectrally capped correlation
//!   matrices, with an optimality certificate and a subspace witness.
//! * [`bounds`] — closed forms, upper bounds, the rotating-lines lower-bound
//!   construction, and the path-graph Laplacian machinery behind them.
//!
//! [`verify`] wires the whole stack into named self-checks used both by the
//! acceptance test suite and the `cycloproj verify` command.

pub mod bounds;
pub mod error;
pub mod fn_solver;
pub mod linalg;
pub mod map_sim;
pub mod subspaces;
pub mod tol;
pub mod verify;

pub use bounds::{BoundRow, LowerBoundProbe};
pub use error::{Error, Result};
pub use fn_solver::{FeasiblePoint, FeasibleSpec, SolveResult, SolverOptions};
pub use linalg::{ComplexMatrix, HermitianMatrix, SpectralDecomposition};
pub use map_sim::{MapTrace, RateReport};
pub use subspaces::{AngleReport, Subspace, SubspaceSystem};
