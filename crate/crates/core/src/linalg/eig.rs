//! Hermitian eigendecomposition by cyclic Jacobi, and the spectral
//! operations built on top of it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::{EIG_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL};

use super::matrix::{ComplexMatrix, HermitianMatrix};

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and a unitary matrix whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Rebuilds `V diag(lambda) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut vd = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                vd[(i, j)] = v[(i, j)] * self.eigenvalues[j];
            }
        }
        vd.mul(&v.adjoint())
    }
}

/// Diagonalizes a Hermitian matrix with cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// `JACOBI_OFF_TOL` relative to the input norm; hitting the sweep cap first
/// is reported as [`Error::EigNoConvergence`] carrying the residual.
/// Eigenvectors are phase-normalized so that the first component of
/// magnitude above 1e-8 is real and positive, which makes the decomposition
/// deterministic for a fixed input.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm().max(1.0);
    let stop = JACOBI_OFF_TOL * scale;
    // Rotations below this pivot size cannot move the off-diagonal mass
    // past the stopping threshold, so they are skipped.
    let skip = stop / ((n * n) as f64);

    let mut converged = n == 1;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        if off_diagonal_norm(&m) <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= skip {
                    continue;
                }
                let phase = apq / r;
                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // M <- M J with J = [[c, s*phase], [-s*conj(phase), c]] on (p,q).
                for j in 0..n {
                    let mjp = m[(j, p)];
                    let mjq = m[(j, q)];
                    m[(j, p)] = mjp * c - mjq * s * phase.conj();
                    m[(j, q)] = mjp * s * phase + mjq * c;
                }
                // M <- J* M.
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj * c - mqj * s * phase;
                    m[(q, j)] = mpj * s * phase.conj() + mqj * c;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                // V <- V J.
                for j in 0..n {
                    let vjp = v[(j, p)];
                    let vjq = v[(j, q)];
                    v[(j, p)] = vjp * c - vjq * s * phase.conj();
                    v[(j, q)] = vjp * s * phase + vjq * c;
                }
            }
        }
    }
    if !converged {
        let residual = off_diagonal_norm(&m);
        if residual > stop {
            return Err(Error::EigNoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                residual,
            });
        }
    }

    // Sort ascending and fix eigenvector phases.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let col = v.column_vec(old_j);
        let pivot = col
            .iter()
            .find(|z| z.norm() > 1e-8)
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        let rot = pivot.conj() / pivot.norm();
        for i in 0..n {
            vectors[(i, new_j)] = col[i] * rot;
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Largest singular value, i.e. `sqrt(lambda_max(A* A))`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    // Diagonalize the smaller of A*A and AA*.
    let gram = if a.cols() <= a.rows() {
        a.adjoint().mul(a)
    } else {
        a.mul(&a.adjoint())
    };
    let h = HermitianMatrix::from_matrix(&gram)?;
    let d = eig_hermitian(&h)?;
    Ok(d.lambda_max().max(0.0).sqrt())
}

/// Distance to the positive-semidefinite cone in the spectral sense:
/// `max(0, -lambda_min)`. Zero exactly when the matrix is PSD up to
/// round-off.
pub fn psd_distance(a: &HermitianMatrix) -> Result<f64> {
    let d = eig_hermitian(a)?;
    Ok((-d.lambda_min()).max(0.0))
}

/// Frobenius-metric projection onto the spectral box `{lo*I <= X <= hi*I}`:
/// eigenvalues are clamped into `[lo, hi]`, eigenvectors kept.
pub fn spectral_clip(a: &HermitianMatrix, lo: f64, hi: f64) -> Result<HermitianMatrix> {
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "spectral box is empty: lo = {lo} > hi = {hi}"
        )));
    }
    let d = eig_hermitian(a)?;
    let clamped = SpectralDecomposition {
        eigenvalues: d.eigenvalues.iter().map(|&l| l.clamp(lo, hi)).collect(),
        eigenvectors: d.eigenvectors,
    };
    HermitianMatrix::from_matrix(&clamped.reconstruct())
}

/// Factors a PSD matrix with unit diagonal as a Gram matrix: returns a matrix
/// whose unit columns `v_1..v_n` satisfy `<v_j, v_i> = a_ij`.
///
/// Construction: the Hermitian square root `V diag(sqrt(max(lambda, 0))) V*`,
/// columns renormalized. Inputs with `lambda_min < -1e-6` are rejected.
pub fn gram_factor(a: &HermitianMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    for i in 0..n {
        let dev = (a.get(i, i).re - 1.0).abs();
        if dev > 1e-6 {
            return Err(Error::InvalidInput(format!(
                "gram_factor requires unit diagonal, entry ({i},{i}) deviates by {dev:.3e}"
            )));
        }
    }
    let d = eig_hermitian(a)?;
    if d.lambda_min() < -1e-6 {
        return Err(Error::NotPsd {
            lambda_min: d.lambda_min(),
        });
    }
    let root = SpectralDecomposition {
        eigenvalues: d
            .eigenvalues
            .iter()
            .map(|&l| l.max(0.0).sqrt())
            .collect(),
        eigenvectors: d.eigenvectors,
    };
    let mut b = root.reconstruct();
    for j in 0..n {
        let norm = b.column_vec(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= EIG_TOL {
            return Err(Error::InvalidInput(format!(
                "gram_factor produced a vanishing column {j} (norm {norm:.3e})"
            )));
        }
        for i in 0..n {
            b[(i, j)] /= norm;
        }
    }
    Ok(b)
}
