//! Systems of closed subspaces of a finite-dimensional complex Hilbert
//! space: projectors, the intersection projector, and the Dixmier and
//! Friedrichs numbers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, operator_norm, ComplexMatrix, HermitianMatrix};
use crate::tol::{INTERSECTION_TOL, RANK_TOL};

/// A subspace given by an orthonormal basis (possibly empty for the trivial
/// subspace). Stored as basis columns of length `ambient_dim`.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Complex64>>,
}

impl Subspace {
    /// Orthonormalizes a spanning set by modified Gram-Schmidt with
    /// re-orthogonalization; columns whose residual drops below `RANK_TOL`
    /// are dropped.
    pub fn from_spanning(ambient_dim: usize, spanning: &[Vec<Complex64>]) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be >= 1".into()));
        }
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        for (idx, raw) in spanning.iter().enumerate() {
            if raw.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "spanning vector {idx} has length {}, ambient dimension is {ambient_dim}",
                    raw.len()
                )));
            }
            if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "spanning vector {idx} has non-finite entries"
                )));
            }
            let mut v = raw.clone();
            for _ in 0..2 {
                for b in &basis {
                    let coeff = inner(b, &v);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= coeff * bi;
                    }
                }
            }
            let norm = vec_norm(&v);
            if norm < RANK_TOL {
                continue;
            }
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            basis.push(v);
        }
        Ok(Self { ambient_dim, basis })
    }

    /// The trivial subspace `{0}`.
    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// The full space.
    pub fn full(ambient_dim: usize) -> Self {
        let mut basis = Vec::new();
        for j in 0..ambient_dim {
            let mut e = vec![Complex64::new(0.0, 0.0); ambient_dim];
            e[j] = Complex64::new(1.0, 0.0);
            basis.push(e);
        }
        Self { ambient_dim, basis }
    }

    /// The line spanned by one vector.
    pub fn line(v: &[Complex64]) -> Result<Self> {
        Self::from_spanning(v.len(), &[v.to_vec()])
    }

    /// A real line in the plane at angle `phi` from the first axis.
    pub fn plane_line(phi: f64) -> Self {
        Self::line(&[
            Complex64::new(phi.cos(), 0.0),
            Complex64::new(phi.sin(), 0.0),
        ])
        .expect("unit spanning vector")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    /// Orthogonal projection onto the subspace: `sum_k b_k b_k*`.
    pub fn projector(&self) -> HermitianMatrix {
        let d = self.ambient_dim;
        let mut p = ComplexMatrix::zeros(d, d);
        for b in &self.basis {
            for i in 0..d {
                for j in 0..d {
                    p[(i, j)] += b[i] * b[j].conj();
                }
            }
        }
        HermitianMatrix::from_matrix(&p).expect("projector is square")
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    // <b, a> convention: linear in b, conjugate-linear in a.
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dixmier and Friedrichs numbers of a system together with the dimension of
/// the common intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleReport {
    pub dixmier: f64,
    pub friedrichs: f64,
    pub intersection_dim: usize,
}

/// Ordered system of at least two subspaces sharing one ambient space.
#[derive(Debug, Clone)]
pub struct SubspaceSystem {
    ambient_dim: usize,
    subspaces: Vec<Subspace>,
}

impl SubspaceSystem {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a system needs at least two subspaces, got {}",
                subspaces.len()
            )));
        }
        let ambient_dim = subspaces[0].ambient_dim();
        for (i, s) in subspaces.iter().enumerate() {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "subspace {i} lives in dimension {}, expected {ambient_dim}",
                    s.ambient_dim()
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            subspaces,
        })
    }

    /// System of one-dimensional subspaces spanned by the given vectors.
    pub fn from_lines(vectors: &[Vec<Complex64>]) -> Result<Self> {
        let lines = vectors
            .iter()
            .map(|v| Subspace::line(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of subspaces.
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Projectors `P_1..P_n` in order.
    pub fn projectors(&self) -> Vec<HermitianMatrix> {
        self.subspaces.iter().map(Subspace::projector).collect()
    }

    /// The sum `P_1 + ... + P_n`.
    pub fn sum_projector(&self) -> HermitianMatrix {
        let mut sum = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for s in &self.subspaces {
            sum = sum.add(s.projector().matrix());
        }
        HermitianMatrix::from_matrix(&sum).expect("sum of projectors is square")
    }

    /// Projector onto the intersection `H_1 ∩ ... ∩ H_n`.
    ///
    /// The eigenvalue `n` of `P_1 + ... + P_n` is attained exactly on the
    /// intersection, so the eigenspace with eigenvalues above `n - 1e-8` is
    /// the intersection; an empty intersection yields the zero matrix.
    pub fn intersection_projector(&self) -> Result<HermitianMatrix> {
        let n = self.len() as f64;
        let d = self.ambient_dim;
        let decomp = eig_hermitian(&self.sum_projector())?;
        let mut p0 = ComplexMatrix::zeros(d, d);
        for (k, &lambda) in decomp.eigenvalues.iter().enumerate() {
            if lambda >= n - INTERSECTION_TOL {
                let v = decomp.eigenvectors.column_vec(k);
                for i in 0..d {
                    for j in 0..d {
                        p0[(i, j)] += v[i] * v[j].conj();
                    }
                }
            }
        }
        HermitianMatrix::from_matrix(&p0)
    }

    /// Dimension of the intersection.
    pub fn intersection_dim(&self) -> Result<usize> {
        let n = self.len() as f64;
        let decomp = eig_hermitian(&self.sum_projector())?;
        Ok(decomp
            .eigenvalues
            .iter()
            .filter(|&&l| l >= n - INTERSECTION_TOL)
            .count())
    }

    /// Dixmier number `c_D`, from `||P_1 + ... + P_n|| = 1 + (n-1) c_D`,
    /// clamped into `[0, 1]`.
    pub fn dixmier_number(&self) -> Result<f64> {
        let n = self.len() as f64;
        let norm = operator_norm(self.sum_projector().matrix())?;
        Ok(((norm - 1.0) / (n - 1.0)).clamp(0.0, 1.0))
    }

    /// Friedrichs number `c_F`, from
    /// `c_F = (||P_1 + ... + P_n - n P_0|| - 1) / (n - 1)`,
    /// clamped into `[0, 1]`.
    pub fn friedrichs_number(&self) -> Result<f64> {
        let n = self.len() as f64;
        let p0 = self.intersection_projector()?;
        let shifted = self.sum_projector().sub(&p0.scale(n));
        let norm = operator_norm(shifted.matrix())?;
        Ok(((norm - 1.0) / (n - 1.0)).clamp(0.0, 1.0))
    }

    /// Both angle numbers and the intersection dimension in one pass.
    pub fn angle_report(&self) -> Result<AngleReport> {
        Ok(AngleReport {
            dixmier: self.dixmier_number()?,
            friedrichs: self.friedrichs_number()?,
            intersection_dim: self.intersection_dim()?,
        })
    }

    /// Replaces each subspace by its part orthogonal to the common
    /// intersection (`H_i` becomes `H_i ⊖ H_0`).
    pub fn compress_by_intersection(&self) -> Result<SubspaceSystem> {
        let p0 = self.intersection_projector()?;
        let d = self.ambient_dim;
        let compressed = self
            .subspaces
            .iter()
            .map(|s| {
                let cols: Vec<Vec<Complex64>> = s
                    .basis()
                    .iter()
                    .map(|b| {
                        let pb = p0.matrix().matvec(b);
                        (0..d).map(|i| b[i] - pb[i]).collect()
                    })
                    .collect();
                Subspace::from_spanning(d, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceSystem::new(compressed)
    }

    /// Serializes to the exchange schema
    /// `{ "ambient_dim": d, "subspaces": [ [ [re, im], ... ], ... ] }`
    /// with each subspace a column-major flat list of `[re, im]` pairs.
    pub fn to_json(&self) -> Result<String> {
        let record = SystemRecord {
            ambient_dim: self.ambient_dim,
            subspaces: self
                .subspaces
                .iter()
                .map(|s| {
                    let mut flat = Vec::with_capacity(s.rank() * self.ambient_dim);
                    for col in s.basis() {
                        for z in col {
                            flat.push([z.re, z.im]);
                        }
                    }
                    flat
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&record)?)
    }

    /// Reads the exchange schema; spanning vectors are re-orthonormalized.
    pub fn from_json(text: &str) -> Result<Self> {
        let record: SystemRecord = serde_json::from_str(text)?;
        let d = record.ambient_dim;
        let subspaces = record
            .subspaces
            .iter()
            .map(|flat| {
                if d == 0 || flat.len() % d != 0 {
                    return Err(Error::DimensionMismatch(format!(
                        "subspace entry count {} is not a multiple of ambient_dim {d}",
                        flat.len()
                    )));
                }
                let cols: Vec<Vec<Complex64>> = flat
                    .chunks(d)
                    .map(|col| col.iter().map(|p| Complex64::new(p[0], p[1])).collect())
                    .collect();
                Subspace::from_spanning(d, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(subspaces)
    }
}

#[derive(Serialize, Deserialize)]
struct SystemRecord {
    ambient_dim: usize,
    subspaces: Vec<Vec<[f64; 2]>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize, d: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[k] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn projector_examples() {
        let p = Subspace::line(&e(0, 2)).unwrap().projector();
        assert!((p.get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(p.get(1, 1).norm() < 1e-14);

        let phi = 0.7_f64;
        let p = Subspace::plane_line(phi).projector();
        assert!((p.get(0, 0).re - phi.cos().powi(2)).abs() < 1e-12);
        assert!((p.get(0, 1).re - phi.cos() * phi.sin()).abs() < 1e-12);
        assert!((p.get(1, 1).re - phi.sin().powi(2)).abs() < 1e-12);

        let p = Subspace::full(3).projector();
        assert!(p.matrix().sub(&ComplexMatrix::identity(3)).max_norm() < 1e-12);
    }

    #[test]
    fn projector_is_idempotent_hermitian() {
        let s = Subspace::from_spanning(
            3,
            &[
                vec![
                    Complex64::new(1.0, 0.2),
                    Complex64::new(0.0, -1.0),
                    Complex64::new(0.5, 0.0),
                ],
                vec![
                    Complex64::new(0.0, 1.0),
                    Complex64::new(2.0, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            ],
        )
        .unwrap();
        assert_eq!(s.rank(), 2);
        let p = s.projector();
        let pp = p.matrix().mul(p.matrix());
        assert!(pp.sub(p.matrix()).max_norm() < 1e-10);
    }

    #[test]
    fn rank_detection_drops_dependent_columns() {
        let v = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let w: Vec<Complex64> = v.iter().map(|z| z * 3.0).collect();
        let s = Subspace::from_spanning(3, &[v, w]).unwrap();
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn intersection_examples() {
        // Two distinct lines in C^2 intersect trivially.
        let sys = SubspaceSystem::new(vec![
            Subspace::plane_line(0.0),
            Subspace::plane_line(1.0),
        ])
        .unwrap();
        assert!(sys.intersection_projector().unwrap().matrix().max_norm() < 1e-10);
        assert_eq!(sys.intersection_dim().unwrap(), 0);

        // All subspaces equal to the full space.
        let sys = SubspaceSystem::new(vec![Subspace::full(3); 3]).unwrap();
        let p0 = sys.intersection_projector().unwrap();
        assert!(p0.matrix().sub(&ComplexMatrix::identity(3)).max_norm() < 1e-10);

        // span{e1,e2} ∩ span{e2,e3} = span{e2}: the projector sum is
        // diag(1,2,1) and eigenvalue 2 sits exactly on e2.
        let h1 = Subspace::from_spanning(3, &[e(0, 3), e(1, 3)]).unwrap();
        let h2 = Subspace::from_spanning(3, &[e(1, 3), e(2, 3)]).unwrap();
        let sys = SubspaceSystem::new(vec![h1, h2]).unwrap();
        let p0 = sys.intersection_projector().unwrap();
        assert!((p0.get(1, 1).re - 1.0).abs() < 1e-10);
        assert!(p0.get(0, 0).norm() < 1e-10);
        assert!(p0.get(2, 2).norm() < 1e-10);
        assert_eq!(sys.intersection_dim().unwrap(), 1);
    }

    #[test]
    fn dixmier_examples() {
        let sys = SubspaceSystem::new(vec![Subspace::full(2); 3]).unwrap();
        assert!((sys.dixmier_number().unwrap() - 1.0).abs() < 1e-10);

        let sys = SubspaceSystem::new(vec![
            Subspace::plane_line(0.0),
            Subspace::plane_line(std::f64::consts::FRAC_PI_2),
        ])
        .unwrap();
        assert!(sys.dixmier_number().unwrap() < 1e-10);
    }

    #[test]
    fn friedrichs_examples() {
        let phi = std::f64::consts::PI / 5.0;
        let sys = SubspaceSystem::new(vec![
            Subspace::plane_line(0.0),
            Subspace::plane_line(phi),
        ])
        .unwrap();
        assert!((sys.friedrichs_number().unwrap() - phi.cos()).abs() < 1e-9);

        // Identical subspaces: after removing the intersection nothing is left.
        let sys = SubspaceSystem::new(vec![Subspace::full(2); 3]).unwrap();
        assert!(sys.friedrichs_number().unwrap() < 1e-9);

        // Trivial intersection: c_F agrees with c_D.
        let sys = SubspaceSystem::from_lines(&[
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.8, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.6, 0.0),
                Complex64::new(0.8, 0.0),
            ],
        ])
        .unwrap();
        let cd = sys.dixmier_number().unwrap();
        let cf = sys.friedrichs_number().unwrap();
        assert!((cd - cf).abs() < 1e-9);
    }

    #[test]
    fn compression_matches_friedrichs() {
        // H1 = span{e1, e2}, H2 = span{e2, e3}: H0 = span{e2}, and the
        // compressed system is a pair of orthogonal lines.
        let h1 = Subspace::from_spanning(3, &[e(0, 3), e(1, 3)]).unwrap();
        let h2 = Subspace::from_spanning(3, &[e(1, 3), e(2, 3)]).unwrap();
        let sys = SubspaceSystem::new(vec![h1, h2]).unwrap();
        let cf = sys.friedrichs_number().unwrap();
        let compressed = sys.compress_by_intersection().unwrap();
        assert_eq!(compressed.subspaces()[0].rank(), 1);
        let cd = compressed.dixmier_number().unwrap();
        assert!((cf - cd).abs() < 1e-8);
    }

    #[test]
    fn json_round_trip() {
        let sys = SubspaceSystem::from_lines(&[
            vec![Complex64::new(1.0, 0.5), Complex64::new(0.0, -0.25)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        let text = sys.to_json().unwrap();
        assert!(text.contains("\"ambient_dim\""));
        assert!(text.contains("\"subspaces\""));
        let back = SubspaceSystem::from_json(&text).unwrap();
        assert_eq!(back.ambient_dim(), 2);
        assert_eq!(back.len(), 2);
        let d1 = sys.dixmier_number().unwrap();
        let d2 = back.dixmier_number().unwrap();
        assert!((d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_systems_and_mixed_dims() {
        assert!(SubspaceSystem::new(vec![Subspace::full(2)]).is_err());
        assert!(SubspaceSystem::new(vec![Subspace::full(2), Subspace::full(3)]).is_err());
    }
}
