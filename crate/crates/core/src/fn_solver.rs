//! Solver for the worst-case one-sweep contraction `f_n(c)`, posed as the
//! maximization of the superdiagonal product over spectrally capped
//! correlation matrices with unit diagonal.
//!
//! The search space is the canonical slice of real persymmetric matrices
//! with nonnegative superdiagonal; working there halves the parameter count
//! and removes all phase ambiguity. The objective used internally is the sum
//! of superdiagonal logarithms, which is concave where the superdiagonal is
//! positive and has the same maximizers as the raw product.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, gram_factor, operator_norm, spectral_clip, HermitianMatrix};
use crate::map_sim::product_operator;
use crate::subspaces::SubspaceSystem;
use crate::tol::{
    ARMIJO_C, ARMIJO_SHRINK, ARMIJO_STEP0, ASCENT_MAX_STEPS, ASCENT_TOL, CERT_TOL,
    DYKSTRA_FAIL_RESIDUAL, DYKSTRA_MAX_ROUNDS, DYKSTRA_TOL, FEAS_TOL,
};

/// The constraint set parameters: order `n`, angle parameter `c`, and the
/// spectral cap `t = 1 + (n-1) c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibleSpec {
    n: usize,
    c: f64,
    t: f64,
}

impl FeasibleSpec {
    pub fn new(n: usize, c: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be >= 2, got {n}")));
        }
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::InvalidInput(format!(
                "c must lie in [0, 1], got {c}"
            )));
        }
        Ok(Self {
            n,
            c,
            t: 1.0 + (n as f64 - 1.0) * c,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Spectral cap `t = 1 + (n-1) c`.
    pub fn t(&self) -> f64 {
        self.t
    }
}

/// A real symmetric matrix in the canonical feasible slice: unit diagonal,
/// spectrum in `[0, t]`, nonnegative superdiagonal, persymmetric.
#[derive(Debug, Clone)]
pub struct FeasiblePoint {
    n: usize,
    data: Vec<f64>,
}

impl FeasiblePoint {
    /// The identity, feasible for every spec.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    fn validated(n: usize, data: Vec<f64>, spec: &FeasibleSpec) -> Result<Self> {
        let point = Self { n, data };
        point.check_invariants(spec)?;
        Ok(point)
    }

    fn check_invariants(&self, spec: &FeasibleSpec) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            let dev = (self.entry(i, i) - 1.0).abs();
            if dev > 1e-9 {
                return Err(Error::Infeasible(format!(
                    "diagonal entry ({i},{i}) deviates from 1 by {dev:.3e}"
                )));
            }
        }
        for i in 0..n - 1 {
            if self.entry(i, i + 1) < -1e-12 {
                return Err(Error::Infeasible(format!(
                    "superdiagonal entry ({i},{}) is negative: {:.3e}",
                    i + 1,
                    self.entry(i, i + 1)
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let dev = (self.entry(i, j) - self.entry(n - 1 - i, n - 1 - j)).abs();
                if dev > 1e-9 {
                    return Err(Error::Infeasible(format!(
                        "persymmetry violated at ({i},{j}) by {dev:.3e}"
                    )));
                }
            }
        }
        let decomp = eig_hermitian(&self.to_hermitian())?;
        if decomp.lambda_min() < -FEAS_TOL {
            return Err(Error::Infeasible(format!(
                "lambda_min = {:.3e} below 0",
                decomp.lambda_min()
            )));
        }
        if decomp.lambda_max() > spec.t + FEAS_TOL {
            return Err(Error::Infeasible(format!(
                "lambda_max = {:.6} above the cap t = {}",
                decomp.lambda_max(),
                spec.t
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// The superdiagonal `(a_12, a_23, ..., a_{n-1,n})`.
    pub fn superdiagonal(&self) -> Vec<f64> {
        (0..self.n - 1).map(|i| self.entry(i, i + 1)).collect()
    }

    /// The objective `|a_12 a_23 ... a_{n-1,n}|`.
    pub fn product(&self) -> f64 {
        self.superdiagonal().iter().product::<f64>().abs()
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::from_real(self.n, &self.data).expect("finite symmetric entries")
    }
}

/// Solver configuration: number of ascent starts and the RNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub starts: usize,
    pub seed: u64,
}

impl SolverOptions {
    pub fn new(starts: usize, seed: u64) -> Self {
        Self { starts, seed }
    }
}

/// Default multi-start count: `max(8, 2n)`.
pub fn default_starts(n: usize) -> usize {
    (2 * n).max(8)
}

/// Everything a solve produces: the estimate, the optimal matrix, the
/// optimality-certificate numbers, and the measured subspace witness.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub spec: FeasibleSpec,
    pub f_estimate: f64,
    pub optimum: FeasiblePoint,
    /// Maximum of the certificate functional over the feasible set.
    pub certificate_value: f64,
    /// `certificate_value - (n - 1)`; at an exact optimum this is <= 0.
    pub certificate_gap: f64,
    /// `||P_n ... P_1||` of the one-dimensional witness system.
    pub witness_product_norm: f64,
    /// Dixmier number of the witness system; a valid lower bound needs it
    /// to stay below `c`.
    pub witness_dixmier: f64,
    pub starts_used: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl SolveResult {
    /// A run is certified when the certificate functional could not be
    /// pushed above `n - 1` beyond tolerance.
    pub fn is_certified(&self) -> bool {
        self.certificate_gap <= CERT_TOL
    }

    pub fn record(&self) -> SolveRecord {
        SolveRecord {
            n: self.spec.n(),
            c: self.spec.c(),
            t: self.spec.t(),
            f_estimate: self.f_estimate,
            optimum: self.optimum.entries().to_vec(),
            certificate_value: self.certificate_value,
            certificate_gap: self.certificate_gap,
            witness_product_norm: self.witness_product_norm,
            witness_dixmier: self.witness_dixmier,
            starts_used: self.starts_used,
            iterations: self.iterations,
            seed: self.seed,
        }
    }

    /// Serializes with the exact wire keys.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.record()).expect("plain record serializes")
    }
}

/// Wire format of a solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveRecord {
    pub n: usize,
    pub c: f64,
    pub t: f64,
    pub f_estimate: f64,
    pub optimum: Vec<f64>,
    pub certificate_value: f64,
    pub certificate_gap: f64,
    pub witness_product_norm: f64,
    pub witness_dixmier: f64,
    pub starts_used: usize,
    pub iterations: usize,
    pub seed: u64,
}

// ---------------------------------------------------------------------------
// Dense real symmetric helpers on flat row-major buffers.

fn sym_identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

/// Orthogonal projection onto the affine set
/// {symmetric} ∩ {persymmetric} ∩ {diag = 1}; the three commute.
fn affine_project(n: usize, m: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let sym = 0.5 * (m[i * n + j] + m[j * n + i]);
            let rev = 0.5 * (m[(n - 1 - i) * n + (n - 1 - j)] + m[(n - 1 - j) * n + (n - 1 - i)]);
            out[i * n + j] = 0.5 * (sym + rev);
        }
    }
    for i in 0..n {
        out[i * n + i] = 1.0;
    }
    out
}

fn frob_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Flips signs by a ±1 diagonal conjugation so the superdiagonal becomes
/// nonnegative. The sign factor `u_i u_j` is persymmetry-compatible, so the
/// canonical form survives.
fn sign_fix_superdiagonal(n: usize, m: &mut [f64]) {
    let mut u = vec![1.0f64; n];
    for i in 0..n - 1 {
        // u_i u_{i+1} a_{i,i+1} = sign(a_{i,i+1}) a_{i,i+1} >= 0.
        let s = if m[i * n + i + 1] < 0.0 { -1.0 } else { 1.0 };
        u[i + 1] = u[i] * s;
    }
    if u.iter().all(|&x| x == 1.0) {
        return;
    }
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] *= u[i] * u[j];
        }
    }
}

fn clip_to_box(n: usize, m: &[f64], t: f64) -> Result<Vec<f64>> {
    let h = HermitianMatrix::from_real(n, m)?;
    let clipped = spectral_clip(&h, 0.0, t)?;
    Ok(clipped.real_entries())
}

// ---------------------------------------------------------------------------
// Canonicalization (diagonal-unitary phase fix, transpose averaging,
// reversal averaging).

/// Maps a feasible Hermitian matrix into the canonical slice without
/// decreasing the superdiagonal product.
pub fn canonicalize(a: &HermitianMatrix, spec: &FeasibleSpec) -> Result<FeasiblePoint> {
    let n = spec.n();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix has order {}, spec expects {n}",
            a.dim()
        )));
    }
    for i in 0..n {
        let dev = (a.get(i, i).re - 1.0).abs();
        if dev > FEAS_TOL {
            return Err(Error::Infeasible(format!(
                "diagonal entry ({i},{i}) deviates from 1 by {dev:.3e}"
            )));
        }
    }
    let decomp = eig_hermitian(a)?;
    if decomp.lambda_min() < -FEAS_TOL {
        return Err(Error::Infeasible(format!(
            "lambda_min = {:.3e} below 0",
            decomp.lambda_min()
        )));
    }
    if decomp.lambda_max() > spec.t() + FEAS_TOL {
        return Err(Error::Infeasible(format!(
            "lambda_max = {:.6} above the cap t = {}",
            decomp.lambda_max(),
            spec.t()
        )));
    }

    // Phases u_i with |u_i| = 1 making every superdiagonal entry |a_{i,i+1}|.
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n - 1 {
        let z = a.get(i, i + 1);
        phases[i + 1] = if z.norm() > 0.0 {
            phases[i] * z.conj() / z.norm()
        } else {
            phases[i]
        };
    }
    // Real part of the phased matrix (transpose averaging collapses to the
    // real part for Hermitian input), then reversal averaging.
    let mut real = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            real[i * n + j] = (phases[i].conj() * a.get(i, j) * phases[j]).re;
        }
    }
    let mut canon = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            canon[i * n + j] = 0.5 * (real[i * n + j] + real[(n - 1 - i) * n + (n - 1 - j)]);
        }
    }
    sign_fix_superdiagonal(n, &mut canon);
    FeasiblePoint::validated(n, canon, spec)
}

// ---------------------------------------------------------------------------
// Feasibility projection.

/// Near-metric projection onto the canonical feasible slice by Dykstra's
/// scheme alternating between the affine set {symmetric, persymmetric,
/// diag = 1} and the spectral box `{0 <= X <= tI}`.
///
/// Stops when successive iterates differ by less than `DYKSTRA_TOL` in
/// Frobenius norm; hitting the round cap with residual above
/// `DYKSTRA_FAIL_RESIDUAL` is an error.
pub fn project_feasible(m: &[f64], spec: &FeasibleSpec) -> Result<FeasiblePoint> {
    let n = spec.n();
    if m.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "expected {} entries, got {}",
            n * n,
            m.len()
        )));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    // t = 1 is the singleton {I}: the projection is exact.
    if spec.t() <= 1.0 + 1e-14 {
        return FeasiblePoint::validated(n, sym_identity(n), spec);
    }

    let mut x = affine_project(n, m);
    let mut correction = vec![0.0; n * n];
    for round in 0..DYKSTRA_MAX_ROUNDS {
        let shifted: Vec<f64> = x.iter().zip(&correction).map(|(a, b)| a + b).collect();
        let clipped = clip_to_box(n, &shifted, spec.t())?;
        for k in 0..n * n {
            correction[k] = shifted[k] - clipped[k];
        }
        let next = affine_project(n, &clipped);
        let residual = frob_dist(&next, &x);
        x = next;
        if residual < DYKSTRA_TOL {
            break;
        }
        if round + 1 == DYKSTRA_MAX_ROUNDS && residual >= DYKSTRA_FAIL_RESIDUAL {
            return Err(Error::ProjectionStalled {
                rounds: DYKSTRA_MAX_ROUNDS,
                residual,
            });
        }
    }
    sign_fix_superdiagonal(n, &mut x);
    FeasiblePoint::validated(n, x, spec)
}

// ---------------------------------------------------------------------------
// Projected gradient ascent.

struct AscentOutcome {
    data: Vec<f64>,
    value: f64,
    steps: usize,
}

/// Backtracking projected-gradient ascent of `phi` from a feasible start.
/// `phi` may return `-inf` to reject a region (used by the log objective).
fn projected_ascent<G, P>(
    start: &FeasiblePoint,
    spec: &FeasibleSpec,
    grad: G,
    phi: P,
    max_steps: usize,
) -> Result<AscentOutcome>
where
    G: Fn(&[f64]) -> Vec<f64>,
    P: Fn(&[f64]) -> f64,
{
    let mut x = start.entries().to_vec();
    let mut fx = phi(&x);
    let mut steps = 0;
    if !fx.is_finite() {
        return Ok(AscentOutcome {
            data: x,
            value: fx,
            steps,
        });
    }
    'outer: for _ in 0..max_steps {
        let g = grad(&x);
        if dot(&g, &g) < 1e-30 {
            break;
        }
        let mut alpha = ARMIJO_STEP0;
        let mut accepted = false;
        while alpha > 1e-14 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + alpha * gi).collect();
            let proj = project_feasible(&trial, spec)?;
            let fy = phi(proj.entries());
            if fy.is_finite() {
                let gain = proj
                    .entries()
                    .iter()
                    .zip(&x)
                    .zip(&g)
                    .map(|((p, xi), gi)| (p - xi) * gi)
                    .sum::<f64>()
                    .max(0.0);
                if fy >= fx + ARMIJO_C * gain && fy >= fx {
                    let delta = fy - fx;
                    x = proj.entries().to_vec();
                    fx = fy;
                    steps += 1;
                    accepted = true;
                    if delta < ASCENT_TOL {
                        break 'outer;
                    }
                    break;
                }
            }
            alpha *= ARMIJO_SHRINK;
        }
        if !accepted {
            break;
        }
    }
    Ok(AscentOutcome {
        data: x,
        value: fx,
        steps,
    })
}

fn log_product(n: usize, m: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let a = m[i * n + i + 1];
        if a <= 1e-300 {
            return f64::NEG_INFINITY;
        }
        acc += a.ln();
    }
    acc
}

fn log_gradient(n: usize, m: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; n * n];
    for i in 0..n - 1 {
        let a = m[i * n + i + 1].max(1e-300);
        g[i * n + i + 1] = 0.5 / a;
        g[(i + 1) * n + i] = 0.5 / a;
    }
    g
}

/// The exactly feasible alternating-sign matrix with off-diagonal magnitude
/// `min((n-1)c, 1/(n-1))`; its superdiagonal is positive for `c > 0`.
fn alternating_seed(spec: &FeasibleSpec) -> Vec<f64> {
    let n = spec.n();
    let nf = n as f64;
    let m = ((nf - 1.0) * spec.c()).min(1.0 / (nf - 1.0));
    let mut a = sym_identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let sign = if (i + j) % 2 == 0 { -1.0 } else { 1.0 };
                a[i * n + j] = sign * m;
            }
        }
    }
    a
}

fn seed_matrices(spec: &FeasibleSpec, starts: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = spec.n();
    let c = spec.c();
    let mut seeds = Vec::with_capacity(starts);

    // Identity perturbed along the superdiagonal.
    let delta = 0.5 * (0.5f64).min((spec.t() - 1.0) * 0.5);
    let mut tridiag = sym_identity(n);
    for i in 0..n - 1 {
        tridiag[i * n + i + 1] = delta;
        tridiag[(i + 1) * n + i] = delta;
    }
    seeds.push(tridiag);

    if seeds.len() < starts {
        seeds.push(alternating_seed(spec));
    }

    // Tridiagonal-plus-corner pattern.
    if seeds.len() < starts {
        let x = c.sqrt().min(1.0);
        let y = 2.0 * c - 1.0;
        let mut corner = sym_identity(n);
        for i in 0..n - 1 {
            corner[i * n + i + 1] = x;
            corner[(i + 1) * n + i] = x;
        }
        corner[n - 1] = y;
        corner[(n - 1) * n] = y;
        seeds.push(corner);
    }

    // Random symmetric fills.
    let mut k = 0u64;
    while seeds.len() < starts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(31 * k + 1));
        let mut m = sym_identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        seeds.push(m);
        k += 1;
    }
    seeds.truncate(starts);
    seeds
}

/// Result of a degenerate solve (only possible at c = 0): the identity with
/// a zero product.
fn degenerate_result(spec: &FeasibleSpec, seed: u64) -> Result<SolveResult> {
    let optimum = FeasiblePoint::identity(spec.n());
    let witness = subspace_witness(&optimum, spec)?;
    Ok(SolveResult {
        spec: *spec,
        f_estimate: 0.0,
        optimum,
        certificate_value: 0.0,
        certificate_gap: -(spec.n() as f64 - 1.0),
        witness_product_norm: witness.product_norm,
        witness_dixmier: witness.dixmier,
        starts_used: 0,
        iterations: 0,
        seed,
    })
}

/// Maximizes the superdiagonal product over the feasible slice by
/// multi-start projected gradient ascent on the log objective.
pub fn maximize_product(spec: &FeasibleSpec, starts: usize, seed: u64) -> Result<SolveResult> {
    maximize_product_detailed(spec, starts, seed).map(|(result, _)| result)
}

/// [`maximize_product`] plus the per-start converged products, for
/// dispersion reporting.
pub fn maximize_product_detailed(
    spec: &FeasibleSpec,
    starts: usize,
    seed: u64,
) -> Result<(SolveResult, Vec<f64>)> {
    if starts == 0 {
        return Err(Error::InvalidInput("starts must be >= 1".into()));
    }
    let n = spec.n();
    if spec.c() == 0.0 {
        return Ok((degenerate_result(spec, seed)?, Vec::new()));
    }

    let alternating = project_feasible(&alternating_seed(spec), spec)?;
    let mut best: Option<FeasiblePoint> = None;
    let mut best_value = f64::NEG_INFINITY;
    let mut per_start = Vec::with_capacity(starts);
    let mut iterations = 0;
    for raw in seed_matrices(spec, starts, seed) {
        let mut point = project_feasible(&raw, spec)?;
        if point
            .superdiagonal()
            .iter()
            .any(|&a| a <= 1e-12)
        {
            // Blend with the alternating seed to restore a positive
            // superdiagonal while staying feasible (the set is convex).
            let blended: Vec<f64> = point
                .entries()
                .iter()
                .zip(alternating.entries())
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            point = project_feasible(&blended, spec)?;
        }
        let outcome = projected_ascent(
            &point,
            spec,
            |m| log_gradient(n, m),
            |m| log_product(n, m),
            ASCENT_MAX_STEPS,
        )?;
        iterations += outcome.steps;
        let product = if outcome.value.is_finite() {
            outcome.value.exp()
        } else {
            0.0
        };
        per_start.push(product);
        if outcome.value > best_value {
            best_value = outcome.value;
            best = Some(FeasiblePoint::validated(n, outcome.data, spec)?);
        }
    }
    let best = best.expect("at least one start");
    if best.product() <= 1e-14 {
        return Ok((degenerate_result(spec, seed)?, per_start));
    }

    let certificate_value = if best.superdiagonal().iter().all(|&a| a > 1e-10) {
        certify_optimal(&best, spec)?
    } else {
        0.0
    };
    let witness = subspace_witness(&best, spec)?;
    let f_estimate = best.product();
    let result = SolveResult {
        spec: *spec,
        f_estimate,
        certificate_value,
        certificate_gap: certificate_value - (n as f64 - 1.0),
        witness_product_norm: witness.product_norm,
        witness_dixmier: witness.dixmier,
        optimum: best,
        starts_used: starts,
        iterations,
        seed,
    };
    Ok((result, per_start))
}

/// Maximizes the certificate functional `B -> sum b_{i,i+1} / a_{i,i+1}`
/// over the feasible set. The candidate is optimal exactly when this maximum
/// stays at `n - 1`; values materially above reject it.
pub fn certify_optimal(a: &FeasiblePoint, spec: &FeasibleSpec) -> Result<f64> {
    let n = spec.n();
    let superdiag = a.superdiagonal();
    if superdiag.iter().any(|&v| v <= 1e-10) {
        return Err(Error::InvalidInput(
            "certificate needs a strictly positive superdiagonal".into(),
        ));
    }
    let mut grad = vec![0.0; n * n];
    for i in 0..n - 1 {
        grad[i * n + i + 1] = 0.5 / superdiag[i];
        grad[(i + 1) * n + i] = 0.5 / superdiag[i];
    }
    let functional = |m: &[f64]| -> f64 {
        (0..n - 1)
            .map(|i| m[i * n + i + 1] / superdiag[i])
            .sum::<f64>()
    };

    let mut starts: Vec<Vec<f64>> = vec![a.entries().to_vec(), alternating_seed(spec)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xCE57);
    while starts.len() < 8 {
        let mut m = sym_identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        starts.push(m);
    }

    let mut best = f64::NEG_INFINITY;
    for raw in starts {
        let point = project_feasible(&raw, spec)?;
        let outcome = projected_ascent(
            &point,
            spec,
            |_| grad.clone(),
            |m| functional(m),
            3_000,
        )?;
        best = best.max(functional(&outcome.data));
    }
    Ok(best)
}

/// Measured data of the one-dimensional witness system built from a Gram
/// factor of the candidate matrix.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub system: SubspaceSystem,
    /// `||P_n ... P_1||`, which realizes the superdiagonal product.
    pub product_norm: f64,
    pub dixmier: f64,
}

/// Builds the system of lines spanned by the Gram-factor columns and
/// measures its product norm and Dixmier number.
pub fn subspace_witness(a: &FeasiblePoint, spec: &FeasibleSpec) -> Result<WitnessReport> {
    let n = spec.n();
    let b = gram_factor(&a.to_hermitian())?;
    let vectors: Vec<Vec<Complex64>> = (0..n).map(|j| b.column_vec(j)).collect();
    let system = SubspaceSystem::from_lines(&vectors)?;
    let product_norm = operator_norm(&product_operator(&system))?;
    let dixmier = system.dixmier_number()?;
    Ok(WitnessReport {
        system,
        product_norm,
        dixmier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, c: f64) -> FeasibleSpec {
        FeasibleSpec::new(n, c).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(FeasibleSpec::new(1, 0.5).is_err());
        assert!(FeasibleSpec::new(3, -0.1).is_err());
        assert!(FeasibleSpec::new(3, 1.1).is_err());
        let s = spec(4, 0.5);
        assert!((s.t() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_fixes_canonical_points() {
        let s = spec(3, 0.5);
        let x = 0.5f64.sqrt();
        let a = HermitianMatrix::from_real(3, &[1.0, x, 0.0, x, 1.0, x, 0.0, x, 1.0]).unwrap();
        let p = canonicalize(&a, &s).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((p.entry(i, j) - a.get(i, j).re).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn canonicalize_flips_signs() {
        let s = spec(2, 0.5);
        let a = HermitianMatrix::from_real(2, &[1.0, -0.3, -0.3, 1.0]).unwrap();
        let p = canonicalize(&a, &s).unwrap();
        assert!((p.entry(0, 1) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn canonicalize_alternating_matrix() {
        // All off-diagonal entries -(n-1)c map to the alternating-sign
        // pattern (-1)^{i+j+1} (n-1)c.
        let n = 4;
        let c = 0.05;
        let s = spec(n, c);
        let off = -((n as f64) - 1.0) * c;
        let mut data = vec![off; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        let a = HermitianMatrix::from_real(n, &data).unwrap();
        let p = canonicalize(&a, &s).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j {
                    1.0
                } else {
                    let sign = if (i + j) % 2 == 1 { 1.0 } else { -1.0 };
                    sign * 0.15
                };
                assert!(
                    (p.entry(i, j) - want).abs() < 1e-12,
                    "entry ({i},{j}) = {}, want {want}",
                    p.entry(i, j)
                );
            }
        }
    }

    #[test]
    fn canonicalize_rejects_infeasible() {
        let s = spec(2, 0.1);
        // lambda_max = 1.9 > t = 1.1.
        let a = HermitianMatrix::from_real(2, &[1.0, 0.9, 0.9, 1.0]).unwrap();
        assert!(matches!(canonicalize(&a, &s), Err(Error::Infeasible(_))));
    }

    #[test]
    fn projection_fixes_feasible_points() {
        let s = spec(3, 0.5);
        let x = 0.5f64.sqrt();
        let a = [1.0, x, 0.0, x, 1.0, x, 0.0, x, 1.0];
        let p = project_feasible(&a, &s).unwrap();
        for (got, want) in p.entries().iter().zip(a) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn projection_at_c_zero_returns_identity() {
        let s = spec(4, 0.0);
        let mut noisy = vec![0.3; 16];
        for i in 0..4 {
            noisy[i * 4 + i] = 0.7;
        }
        let p = project_feasible(&noisy, &s).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.entry(i, j) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_of_all_ones_is_feasible() {
        let s = spec(3, 0.5);
        let ones = vec![1.0; 9];
        let p = project_feasible(&ones, &s).unwrap();
        let decomp = eig_hermitian(&p.to_hermitian()).unwrap();
        assert!(decomp.lambda_min() >= -1e-8);
        assert!(decomp.lambda_max() <= s.t() + 1e-8);
    }

    #[test]
    fn solves_f3_small_c_branch() {
        let s = spec(3, 0.2);
        let r = maximize_product(&s, 8, 42).unwrap();
        assert!(
            (r.f_estimate - 0.16).abs() < 1e-6,
            "f = {}",
            r.f_estimate
        );
        // Optimum close to [[1,.4,-.4],[.4,1,.4],[-.4,.4,1]].
        assert!((r.optimum.entry(0, 1) - 0.4).abs() < 1e-4);
        assert!((r.optimum.entry(1, 2) - 0.4).abs() < 1e-4);
        assert!((r.optimum.entry(0, 2) + 0.4).abs() < 1e-4);
    }

    #[test]
    fn solves_f3_linear_branch() {
        let s = spec(3, 0.5);
        let r = maximize_product(&s, 8, 42).unwrap();
        assert!((r.f_estimate - 0.5).abs() < 1e-6, "f = {}", r.f_estimate);
        let x = 0.5f64.sqrt();
        assert!((r.optimum.entry(0, 1) - x).abs() < 1e-4);
        assert!((r.optimum.entry(1, 2) - x).abs() < 1e-4);
        assert!(r.optimum.entry(0, 2).abs() < 1e-4);
    }

    #[test]
    fn solves_small_c_law_n4() {
        let s = spec(4, 0.05);
        let r = maximize_product(&s, 8, 42).unwrap();
        assert!(
            (r.f_estimate - 3.375e-3).abs() < 1e-6,
            "f = {}",
            r.f_estimate
        );
    }

    #[test]
    fn degenerate_c_zero() {
        let s = spec(2, 0.0);
        let r = maximize_product(&s, 8, 42).unwrap();
        assert_eq!(r.f_estimate, 0.0);
        assert_eq!(r.optimum.entry(0, 1), 0.0);
        assert!(r.witness_product_norm < 1e-10);
    }

    #[test]
    fn certificate_accepts_known_optima() {
        // n = 2, c = 0.5: the only freedom is b_12 in [0, 0.5], so the
        // certificate functional maxes out at exactly 1.
        let s = spec(2, 0.5);
        let a = project_feasible(&[1.0, 0.5, 0.5, 1.0], &s).unwrap();
        let v = certify_optimal(&a, &s).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "certificate = {v}");

        let s = spec(3, 0.5);
        let x = 0.5f64.sqrt();
        let a = project_feasible(&[1.0, x, 0.0, x, 1.0, x, 0.0, x, 1.0], &s).unwrap();
        let v = certify_optimal(&a, &s).unwrap();
        assert!(v <= 2.0 + 1e-6, "certificate = {v}");
        assert!(v >= 2.0 - 1e-6, "certificate = {v}");
    }

    #[test]
    fn certificate_rejects_suboptimal() {
        // a_12 = a_23 = 0.3 at c = 0.5: plugging in the true optimum drives
        // the functional to about 4.71 > 2.
        let s = spec(3, 0.5);
        let a = project_feasible(&[1.0, 0.3, 0.0, 0.3, 1.0, 0.3, 0.0, 0.3, 1.0], &s).unwrap();
        let v = certify_optimal(&a, &s).unwrap();
        assert!(v > 2.0 + 1e-3, "certificate = {v}");
    }

    #[test]
    fn witness_examples() {
        let s = spec(3, 0.5);
        let id = FeasiblePoint::identity(3);
        let w = subspace_witness(&id, &s).unwrap();
        assert!(w.product_norm < 1e-10);
        assert!(w.dixmier < 1e-8);

        let x = 0.5f64.sqrt();
        let a = project_feasible(&[1.0, x, 0.0, x, 1.0, x, 0.0, x, 1.0], &s).unwrap();
        let w = subspace_witness(&a, &s).unwrap();
        assert!((w.product_norm - 0.5).abs() < 1e-7);
        assert!(w.dixmier <= 0.5 + 1e-7);

        let s4 = spec(4, 0.05);
        let r = maximize_product(&s4, 8, 42).unwrap();
        assert!((r.witness_product_norm - 3.375e-3).abs() < 1e-6);
        assert!(r.witness_dixmier <= 0.05 + 1e-7);
    }

    #[test]
    fn independent_seeds_agree() {
        let s = spec(4, 0.35);
        let r1 = maximize_product(&s, 8, 42).unwrap();
        let r2 = maximize_product(&s, 8, 1234567).unwrap();
        for (a, b) in r1
            .optimum
            .superdiagonal()
            .iter()
            .zip(r2.optimum.superdiagonal())
        {
            assert!((a - b).abs() < 1e-5, "{a} vs {b}");
        }
    }

    #[test]
    fn solve_record_round_trips() {
        let s = spec(3, 0.2);
        let r = maximize_product(&s, 4, 42).unwrap();
        let text = r.to_json();
        let record: SolveRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(record.n, 3);
        assert_eq!(record.seed, 42);
        assert_eq!(record.optimum.len(), 9);
        assert!((record.f_estimate - r.f_estimate).abs() < 1e-15);
    }
}
