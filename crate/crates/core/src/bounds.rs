//! Closed forms, upper bounds, the rotating-lines lower-bound construction,
//! and the path-graph Laplacian machinery behind them.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fn_solver::{maximize_product, FeasibleSpec, SolverOptions};
use crate::linalg::{eig_hermitian, operator_norm, HermitianMatrix};
use crate::map_sim::product_operator;
use crate::subspaces::{Subspace, SubspaceSystem};
use rayon::prelude::*;

/// `sin^2(pi / (2n))`, the algebraic connectivity of the path graph over 4.
fn sin_sq(n: usize) -> f64 {
    let s = (PI / (2.0 * n as f64)).sin();
    s * s
}

/// Exact worst case for two subspaces: `f_2(c) = c`.
pub fn f2_closed(c: f64) -> f64 {
    c
}

/// Exact worst case for three subspaces: `4c^2` up to `c = 1/4`, then `c`.
pub fn f3_closed(c: f64) -> f64 {
    if c <= 0.25 {
        4.0 * c * c
    } else {
        c
    }
}

/// Small-angle law `(n-1)^{n-1} c^{n-1}`, valid for `c <= 1/(n-1)^2` only.
pub fn fn_small_c(n: usize, c: f64) -> Result<f64> {
    let m = n as f64 - 1.0;
    let limit = 1.0 / (m * m);
    if !(0.0..=limit + 1e-15).contains(&c) {
        return Err(Error::InvalidInput(format!(
            "the small-angle law requires 0 <= c <= 1/(n-1)^2 = {limit:.6}, got {c}"
        )));
    }
    Ok(m.powi(n as i32 - 1) * c.powi(n as i32 - 1))
}

/// Spectral upper bound
/// `sqrt((n - 4(n-1) s (1-c)) / (n + 4(n-1)^2 s (1-c)))` with
/// `s = sin^2(pi/(2n))`; equals 1 at `c = 1`.
pub fn ub_ours(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    let s = sin_sq(n);
    let u = 1.0 - c;
    let num = nf - 4.0 * (nf - 1.0) * s * u;
    let den = nf + 4.0 * (nf - 1.0) * (nf - 1.0) * s * u;
    (num.max(0.0) / den).sqrt()
}

/// Upper bound `sqrt(1 - (1-c)^2 / (16 n^2))`.
pub fn ub_bgm(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    let u = 1.0 - c;
    (1.0 - u * u / (16.0 * nf * nf)).max(0.0).sqrt()
}

/// Upper bound `sqrt(1 - 3(n-1)(1-c) / n^3)`.
pub fn ub_bs(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    let u = 1.0 - c;
    (1.0 - 3.0 * (nf - 1.0) * u / (nf * nf * nf)).max(0.0).sqrt()
}

/// Slope coefficient `a_n = 2(n-1) sin^2(pi/(2n))` of the bounds at `c = 1`;
/// `a_2 = a_3 = 1`.
pub fn slope_at_one(n: usize) -> f64 {
    2.0 * (n as f64 - 1.0) * sin_sq(n)
}

/// Curvature coefficient `b_n = 6(n-1)^2 sin^4(pi/(2n))` of the quadratic
/// upper bound.
pub fn curvature_coefficient(n: usize) -> f64 {
    let m = n as f64 - 1.0;
    6.0 * m * m * sin_sq(n) * sin_sq(n)
}

/// Quadratic upper bound `1 - a_n (1-c) + b_n (1-c)^2`.
pub fn ub_quadratic(n: usize, c: f64) -> f64 {
    let u = 1.0 - c;
    1.0 - slope_at_one(n) * u + curvature_coefficient(n) * u * u
}

/// Quadratic lower-bound template `1 - a_n (1-c) - b_tilde (1-c)^2` for a
/// caller-supplied curvature constant.
pub fn lb_quadratic_template(n: usize, c: f64, b_tilde: f64) -> f64 {
    let u = 1.0 - c;
    1.0 - slope_at_one(n) * u - b_tilde * u * u
}

/// Laplacian of the path graph on `n` vertices: tridiagonal with diagonal
/// `(1, 2, ..., 2, 1)` and `-1` off-diagonals.
pub fn path_laplacian(n: usize) -> HermitianMatrix {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = if i == 0 || i == n - 1 { 1.0 } else { 2.0 };
        if i + 1 < n {
            data[i * n + i + 1] = -1.0;
            data[(i + 1) * n + i] = -1.0;
        }
    }
    HermitianMatrix::from_real(n, &data).expect("finite entries")
}

/// Second-smallest Laplacian eigenvalue of the path graph and a unit
/// eigenvector orthogonal to the all-ones vector, sign-fixed so the first
/// component is nonnegative.
pub fn fiedler(n: usize) -> Result<(f64, Vec<f64>)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "the Fiedler pair needs n >= 2, got {n}"
        )));
    }
    let decomp = eig_hermitian(&path_laplacian(n))?;
    let value = decomp.eigenvalues[1];
    let mut vector: Vec<f64> = decomp.eigenvectors.column_vec(1).iter().map(|z| z.re).collect();
    if vector[0] < 0.0 {
        for v in vector.iter_mut() {
            *v = -*v;
        }
    }
    let norm = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in vector.iter_mut() {
        *v /= norm;
    }
    Ok((value, vector))
}

/// Sharp constant `D_n = n / (4 sin^2(pi/(2n)))` of the pairwise-versus-
/// consecutive squared-difference inequality.
pub fn dn_constant(n: usize) -> f64 {
    n as f64 / (4.0 * sin_sq(n))
}

/// Evaluates both sides of the difference inequality
/// `sum_{i<j} (a_i - a_j)^2 <= D_n sum_i (a_i - a_{i+1})^2`.
pub fn check_difference_inequality(a: &[f64]) -> Result<(f64, f64)> {
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "the difference inequality needs at least two values".into(),
        ));
    }
    let mut lhs = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            lhs += (a[i] - a[j]) * (a[i] - a[j]);
        }
    }
    let rhs: f64 = (0..n - 1).map(|i| (a[i] - a[i + 1]) * (a[i] - a[i + 1])).sum();
    Ok((lhs, dn_constant(n) * rhs))
}

/// One evaluation of the rotating-lines construction: `n` lines in the plane
/// at angles `alpha_k * tau` with `alpha` the Fiedler direction.
#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundProbe {
    pub n: usize,
    pub tau: f64,
    /// Fiedler direction (unit, zero-sum).
    pub alphas: Vec<f64>,
    /// Dixmier number of the constructed system.
    pub c_of_tau: f64,
    /// `||P_n ... P_1||` of the constructed system — a certified lower bound
    /// for the worst case at `c = c_of_tau`.
    pub product_norm: f64,
}

fn probe_determinant(alphas: &[f64], tau: f64) -> f64 {
    let n = alphas.len();
    let mut d = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let s = ((alphas[i] - alphas[j]) * tau).sin();
            d += s * s;
        }
    }
    d
}

fn probe_from_alphas(n: usize, alphas: &[f64], tau: f64) -> Result<LowerBoundProbe> {
    if tau < 0.0 {
        return Err(Error::ProbeOutOfRange(format!("tau must be >= 0, got {tau}")));
    }
    let nf = n as f64;
    let d = probe_determinant(alphas, tau);
    let disc = nf * nf - 4.0 * d;
    if disc < -1e-9 {
        return Err(Error::ProbeOutOfRange(format!(
            "determinant {d:.6} exceeds n^2/4 = {:.6}",
            nf * nf / 4.0
        )));
    }
    let c_of_tau = (((nf + disc.max(0.0).sqrt()) / 2.0) - 1.0) / (nf - 1.0);
    let product_norm: f64 = (0..n - 1)
        .map(|k| ((alphas[k + 1] - alphas[k]) * tau).cos().abs())
        .product();

    // Cross-validate against the explicitly constructed plane-line system.
    let lines: Vec<Subspace> = alphas.iter().map(|&a| Subspace::plane_line(a * tau)).collect();
    let sys = SubspaceSystem::new(lines)?;
    let measured_c = sys.dixmier_number()?;
    let measured_p = operator_norm(&product_operator(&sys))?;
    if (measured_c - c_of_tau).abs() > 1e-9 {
        return Err(Error::SelfCheck(format!(
            "probe Dixmier mismatch at tau = {tau}: formula {c_of_tau:.12}, measured {measured_c:.12}"
        )));
    }
    if (measured_p - product_norm).abs() > 1e-9 {
        return Err(Error::SelfCheck(format!(
            "probe product mismatch at tau = {tau}: formula {product_norm:.12}, measured {measured_p:.12}"
        )));
    }
    Ok(LowerBoundProbe {
        n,
        tau,
        alphas: alphas.to_vec(),
        c_of_tau,
        product_norm,
    })
}

/// Evaluates the rotating-lines probe at a single `tau`.
pub fn lower_bound_probe(n: usize, tau: f64) -> Result<LowerBoundProbe> {
    let (_, alphas) = fiedler(n)?;
    probe_from_alphas(n, &alphas, tau)
}

/// The probe family for one `n`: the Fiedler direction, the end of the
/// regime where the determinant keeps increasing, and the smallest reachable
/// angle parameter.
#[derive(Debug, Clone)]
pub struct ProbeFamily {
    n: usize,
    alphas: Vec<f64>,
    tau_max: f64,
    c_min: f64,
}

impl ProbeFamily {
    pub fn new(n: usize) -> Result<Self> {
        let (_, alphas) = fiedler(n)?;
        // Walk tau forward while the determinant strictly increases; the
        // construction parametrizes c monotonically on that segment.
        let step = 2e-3;
        let mut prev = 0.0;
        let mut tau_max = 0.0;
        for k in 1..=50_000 {
            let tau = step * k as f64;
            let d = probe_determinant(&alphas, tau);
            if d <= prev {
                break;
            }
            prev = d;
            tau_max = tau;
        }
        let nf = n as f64;
        let disc = (nf * nf - 4.0 * prev).max(0.0);
        let c_min = (((nf + disc.sqrt()) / 2.0) - 1.0) / (nf - 1.0);
        Ok(Self {
            n,
            alphas,
            tau_max,
            c_min,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Smallest `c` the construction reaches within its monotone regime.
    pub fn c_min(&self) -> f64 {
        self.c_min
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    pub fn probe(&self, tau: f64) -> Result<LowerBoundProbe> {
        probe_from_alphas(self.n, &self.alphas, tau)
    }

    /// Inverts `c_of_tau` by bisection on the monotone segment; `None` when
    /// the target lies below the reachable range.
    pub fn probe_at_c(&self, c: f64) -> Result<Option<LowerBoundProbe>> {
        if c >= 1.0 - 1e-12 {
            return Ok(Some(self.probe(0.0)?));
        }
        if c < self.c_min - 1e-12 {
            return Ok(None);
        }
        let c_at = |tau: f64| -> f64 {
            let nf = self.n as f64;
            let d = probe_determinant(&self.alphas, tau);
            let disc = (nf * nf - 4.0 * d).max(0.0);
            (((nf + disc.sqrt()) / 2.0) - 1.0) / (nf - 1.0)
        };
        let mut lo = 0.0;
        let mut hi = self.tau_max;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let cm = c_at(mid);
            if (cm - c).abs() <= 1e-12 {
                lo = mid;
                break;
            }
            if cm > c {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Some(self.probe(0.5 * (lo + hi))?))
    }

    /// Lower bound for the worst case at `c`: the probe value on the
    /// reachable range, and the vacuous bound 0 below it.
    pub fn lower_bound_at(&self, c: f64) -> Result<f64> {
        Ok(self
            .probe_at_c(c)?
            .map(|p| p.product_norm)
            .unwrap_or(0.0))
    }

    /// Empirical curvature constant for the quadratic lower-bound template,
    /// fitted so the template stays below every probe sample and below the
    /// concavity floor `c^{n-1}`.
    pub fn fit_b_tilde(&self) -> Result<f64> {
        let a = slope_at_one(self.n);
        let mut b = 0.0f64;
        for k in 1..=60 {
            let tau = self.tau_max * k as f64 / 60.0;
            let p = self.probe(tau)?;
            let u = 1.0 - p.c_of_tau;
            if u > 1e-8 {
                b = b.max((1.0 - a * u - p.product_norm) / (u * u));
            }
        }
        // Below the reachable range only the concavity floor is available.
        let n = self.n as f64;
        for k in 1..=100 {
            let u = k as f64 / 100.0;
            let floor = (1.0 - u).powf(n - 1.0);
            b = b.max((1.0 - a * u - floor) / (u * u));
        }
        Ok(b)
    }
}

/// One row of the bounds table.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub c: f64,
    /// Exact value, known for n = 2 and n = 3 only.
    pub f_closed: Option<f64>,
    /// Solver estimate, present when requested.
    pub f_solver: Option<f64>,
    pub lb_construction: f64,
    pub ub_ours: f64,
    pub ub_bgm: f64,
    pub ub_bs: f64,
    pub ub_quadratic: f64,
    pub lb_quadratic_template: f64,
}

/// Builds one bounds-table row per grid point; with `solver` options the
/// `f_solver` column is filled by the ascent solver (seed split per index,
/// so parallel and serial runs agree).
pub fn bounds_table(
    n: usize,
    c_grid: &[f64],
    solver: Option<SolverOptions>,
) -> Result<Vec<BoundRow>> {
    if c_grid.is_empty() {
        return Err(Error::InvalidInput("empty c grid".into()));
    }
    for &c in c_grid {
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::InvalidInput(format!("grid value {c} outside [0, 1]")));
        }
    }
    let family = ProbeFamily::new(n)?;
    let b_tilde = family.fit_b_tilde()?;
    c_grid
        .par_iter()
        .enumerate()
        .map(|(idx, &c)| {
            let f_closed = match n {
                2 => Some(f2_closed(c)),
                3 => Some(f3_closed(c)),
                _ => None,
            };
            let f_solver = match solver {
                Some(opts) => {
                    let spec = FeasibleSpec::new(n, c)?;
                    let run =
                        maximize_product(&spec, opts.starts, opts.seed.wrapping_add(idx as u64))?;
                    Some(run.f_estimate)
                }
                None => None,
            };
            Ok(BoundRow {
                n,
                c,
                f_closed,
                f_solver,
                lb_construction: family.lower_bound_at(c)?,
                ub_ours: ub_ours(n, c),
                ub_bgm: ub_bgm(n, c),
                ub_bs: ub_bs(n, c),
                ub_quadratic: ub_quadratic(n, c),
                lb_quadratic_template: lb_quadratic_template(n, c, b_tilde),
            })
        })
        .collect()
}

/// CSV with the exact header
/// `n,c,f_closed,f_solver,lb_construction,ub_ours,ub_bgm,ub_bs,ub_quadratic`;
/// absent optional cells stay blank, numbers carry 17 significant digits.
pub fn bound_rows_to_csv(rows: &[BoundRow]) -> String {
    let sig = |x: f64| format!("{x:.16e}");
    let opt = |x: Option<f64>| x.map(&sig).unwrap_or_default();
    let mut out = String::from("n,c,f_closed,f_solver,lb_construction,ub_ours,ub_bgm,ub_bs,ub_quadratic\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            sig(r.c),
            opt(r.f_closed),
            opt(r.f_solver),
            sig(r.lb_construction),
            sig(r.ub_ours),
            sig(r.ub_bgm),
            sig(r.ub_bs),
            sig(r.ub_quadratic),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_forms() {
        assert!((f3_closed(0.2) - 0.16).abs() < 1e-15);
        assert!((f3_closed(0.25) - 0.25).abs() < 1e-15);
        assert!((f3_closed(0.25) - 4.0 * 0.25 * 0.25).abs() < 1e-15);
        assert!((f2_closed(0.7) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn small_c_law() {
        assert!((fn_small_c(4, 1.0 / 9.0).unwrap() - 1.0 / 27.0).abs() < 1e-15);
        assert_eq!(fn_small_c(3, 0.0).unwrap(), 0.0);
        assert!((fn_small_c(5, 0.05).unwrap() - 1.6e-3).abs() < 1e-15);
        assert!(fn_small_c(3, 0.3).is_err());
    }

    #[test]
    fn spectral_bound_values() {
        assert!((ub_ours(2, 1.0) - 1.0).abs() < 1e-15);
        assert!((ub_ours(2, 0.5) - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((ub_ours(3, 0.0) - (1.0f64 / 7.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn known_bound_values() {
        assert!((ub_bgm(3, 1.0) - 1.0).abs() < 1e-15);
        assert!((ub_bgm(2, 0.0) - (1.0 - 1.0f64 / 64.0).sqrt()).abs() < 1e-15);
        assert!((ub_bs(3, 0.0) - (1.0 - 6.0f64 / 27.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quadratic_bound_values() {
        assert!((slope_at_one(2) - 1.0).abs() < 1e-14);
        assert!((slope_at_one(3) - 1.0).abs() < 1e-14);
        assert!((ub_quadratic(2, 1.0) - 1.0).abs() < 1e-15);
        assert!((ub_quadratic(3, 0.9) - 0.915).abs() < 1e-12);
    }

    #[test]
    fn bound_chain() {
        // ub_ours <= 1/sqrt(1 + 4(n-1) s (1-c)) <= ub_quadratic.
        for n in 2..=8 {
            let s = sin_sq(n);
            for k in 0..=20 {
                let c = k as f64 / 20.0;
                let mid = 1.0 / (1.0 + 4.0 * (n as f64 - 1.0) * s * (1.0 - c)).sqrt();
                assert!(ub_ours(n, c) <= mid + 1e-12, "n={n} c={c}");
                assert!(mid <= ub_quadratic(n, c) + 1e-12, "n={n} c={c}");
            }
        }
    }

    #[test]
    fn bound_ordering_near_one() {
        for n in 2..=8 {
            for k in 0..=10 {
                let c = 0.9 + 0.01 * k as f64;
                assert!(ub_ours(n, c) <= ub_bgm(n, c) + 1e-12, "n={n} c={c}");
                assert!(ub_ours(n, c) <= ub_bs(n, c) + 1e-12, "n={n} c={c}");
            }
        }
    }

    #[test]
    fn path_laplacian_small_cases() {
        let (l2, v) = fiedler(3).unwrap();
        assert!((l2 - 1.0).abs() < 1e-12);
        // Eigenvector proportional to (1, 0, -1).
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((v[0] - inv_sqrt2).abs() < 1e-9);
        assert!(v[1].abs() < 1e-9);
        assert!((v[2] + inv_sqrt2).abs() < 1e-9);

        let (l2, _) = fiedler(2).unwrap();
        assert!((l2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fiedler_matches_cosine_profile() {
        // The second eigenvector of the path Laplacian follows
        // cos((2k-1) pi / (2n)) up to normalization.
        for n in [2usize, 3, 4, 5, 8, 12] {
            let (value, v) = fiedler(n).unwrap();
            assert!((value - 4.0 * sin_sq(n)).abs() < 1e-10, "n = {n}");
            let raw: Vec<f64> = (1..=n)
                .map(|k| ((2 * k - 1) as f64 * PI / (2.0 * n as f64)).cos())
                .collect();
            let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            for (got, want) in v.iter().zip(raw.iter().map(|x| x / norm)) {
                assert!((got - want).abs() < 1e-9, "n = {n}");
            }
            let ones_dot: f64 = v.iter().sum();
            assert!(ones_dot.abs() < 1e-9);
        }
    }

    #[test]
    fn difference_inequality_cases() {
        assert!((dn_constant(2) - 1.0).abs() < 1e-14);
        let (lhs, rhs) = check_difference_inequality(&[3.0, -1.0]).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);

        assert!((dn_constant(3) - 3.0).abs() < 1e-12);
        let (lhs, rhs) = check_difference_inequality(&[1.0, 0.0, -1.0]).unwrap();
        assert!((lhs - 6.0).abs() < 1e-12);
        assert!((rhs - 6.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a: Vec<f64> = (0..7).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (lhs, rhs) = check_difference_inequality(&a).unwrap();
            assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn difference_inequality_in_hilbert_space() {
        // Vector version via the triangle-inequality reduction.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=6);
            let dim = rng.gen_range(1..=6);
            let vs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let dist2 = |a: &[f64], b: &[f64]| -> f64 {
                a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
            };
            let mut lhs = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    lhs += dist2(&vs[i], &vs[j]);
                }
            }
            let rhs: f64 = (0..n - 1).map(|i| dist2(&vs[i], &vs[i + 1])).sum();
            assert!(lhs <= dn_constant(n) * rhs * (1.0 + 1e-12) + 1e-12);
        }
    }

    #[test]
    fn probe_at_zero() {
        let p = lower_bound_probe(3, 0.0).unwrap();
        assert!((p.c_of_tau - 1.0).abs() < 1e-12);
        assert!((p.product_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probe_two_lines_collapses_to_cosine() {
        // For n = 2 both formulas reduce to |cos(sqrt(2) tau)|.
        for &tau in &[0.05, 0.2, 0.5, 0.9] {
            let p = lower_bound_probe(2, tau).unwrap();
            let want = (2.0f64.sqrt() * tau).cos();
            assert!((p.c_of_tau - want).abs() < 1e-9, "tau = {tau}");
            assert!((p.product_norm - want.abs()).abs() < 1e-9, "tau = {tau}");
        }
    }

    #[test]
    fn probe_stays_above_quadratic_expansion() {
        let p = lower_bound_probe(3, 0.1).unwrap();
        let u = 1.0 - p.c_of_tau;
        assert!(p.product_norm >= 1.0 - slope_at_one(3) * u - 5.0 * u * u);
        assert!(p.c_of_tau < 1.0);
        assert!((0.0..=1.0).contains(&p.product_norm));
    }

    #[test]
    fn probe_family_inversion() {
        // With the Fiedler direction the determinant maximum reaches n^2/4,
        // so the regime bottoms out at c = (n-2)/(2(n-1)) = 1/4 for n = 3.
        let family = ProbeFamily::new(3).unwrap();
        assert!(
            (family.c_min() - 0.25).abs() < 2e-3,
            "c_min = {}",
            family.c_min()
        );
        for &c in &[0.3, 0.55, 0.7, 0.9, 0.99] {
            let p = family.probe_at_c(c).unwrap().unwrap();
            assert!((p.c_of_tau - c).abs() < 1e-9, "c = {c}: got {}", p.c_of_tau);
        }
        assert!(family.probe_at_c(0.1).unwrap().is_none());
        assert_eq!(family.lower_bound_at(0.1).unwrap(), 0.0);
    }

    #[test]
    fn table_basics() {
        let rows = bounds_table(3, &[0.0, 0.25, 0.5, 1.0], None).unwrap();
        let closed: Vec<f64> = rows.iter().map(|r| r.f_closed.unwrap()).collect();
        for (got, want) in closed.iter().zip([0.0, 0.25, 0.5, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        for r in &rows {
            assert!(r.lb_construction <= r.ub_ours + 1e-9);
            assert!(r.f_solver.is_none());
        }
    }

    #[test]
    fn table_n2_closed_form_below_spectral_bound() {
        let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let rows = bounds_table(2, &grid, None).unwrap();
        for r in rows {
            let f = r.f_closed.unwrap();
            assert!((f - r.c).abs() < 1e-15);
            assert!(f <= r.ub_ours + 1e-12);
        }
    }

    #[test]
    fn csv_header_and_blanks() {
        let rows = bounds_table(4, &[0.5], None).unwrap();
        let csv = bound_rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,c,f_closed,f_solver,lb_construction,ub_ours,ub_bgm,ub_bs,ub_quadratic"
        );
        let row = lines.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9);
        assert_eq!(fields[0], "4");
        assert!(fields[2].is_empty() && fields[3].is_empty());
        assert!(fields[4].contains('e'));
    }
}
