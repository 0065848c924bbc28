//! Self-contained dense complex linear algebra.
//!
//! Everything here is sized for the small dense matrices the rest of the
//! crate works with (dimensions up to a few dozen): flat row-major storage,
//! cyclic Jacobi for Hermitian eigenproblems, and spectral helpers derived
//! from it.

mod eig;
mod matrix;

pub use eig::{
    eig_hermitian, gram_factor, operator_norm, psd_distance, spectral_clip,
    SpectralDecomposition,
};
pub use matrix::{ComplexMatrix, HermitianMatrix};
