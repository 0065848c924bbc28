//! The method of cyclic alternating projections: running the iteration,
//! recording error traces, and checking them against one-sweep rate bounds.

use num_complex::Complex64;

use crate::bounds;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::subspaces::SubspaceSystem;

/// Trace of a cyclic-projection run. One entry per full sweep: the iterate
/// `x_{kn}`, the error `||x_{kn} - P_0 x_0||`, and the ratio of consecutive
/// errors (`None` where the previous error already vanished).
#[derive(Debug, Clone)]
pub struct MapTrace {
    pub sweeps: usize,
    /// `x_0, x_n, x_{2n}, ...` — index k holds the iterate after k sweeps.
    pub iterates: Vec<Vec<Complex64>>,
    /// `errors[k] = ||x_{kn} - P_0 x_0||`, k = 0..=sweeps.
    pub errors: Vec<f64>,
    /// `contraction[k-1] = errors[k] / errors[k-1]` for k = 1..=sweeps.
    pub contraction: Vec<Option<f64>>,
    /// Per-projection error norms (sweeps * n entries), recorded only when
    /// requested.
    pub per_projection_errors: Option<Vec<f64>>,
}

impl MapTrace {
    /// CSV with header `sweep,error,ratio`, one row per sweep, errors at 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sweep,error,ratio\n");
        for k in 1..=self.sweeps {
            let ratio = match self.contraction[k - 1] {
                Some(r) => format!("{r:.16e}"),
                None => String::new(),
            };
            out.push_str(&format!("{k},{:.16e},{ratio}\n", self.errors[k]));
        }
        out
    }
}

/// Runs `sweeps` full cycles `x <- P_n ... P_2 P_1 x` from `x0`, measuring
/// every sweep against the limit `P_0 x0`.
pub fn run_map(sys: &SubspaceSystem, x0: &[Complex64], sweeps: usize) -> Result<MapTrace> {
    run_map_verbose(sys, x0, sweeps, false)
}

/// [`run_map`] with optional per-projection error recording.
pub fn run_map_verbose(
    sys: &SubspaceSystem,
    x0: &[Complex64],
    sweeps: usize,
    record_projections: bool,
) -> Result<MapTrace> {
    if x0.len() != sys.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "x0 has length {}, ambient dimension is {}",
            x0.len(),
            sys.ambient_dim()
        )));
    }
    if sweeps == 0 {
        return Err(Error::InvalidInput("sweeps must be >= 1".into()));
    }
    let projectors = sys.projectors();
    let p0 = sys.intersection_projector()?;
    let limit = p0.matrix().matvec(x0);

    let error_of = |x: &[Complex64]| -> f64 {
        x.iter()
            .zip(&limit)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };

    let mut iterates = Vec::with_capacity(sweeps + 1);
    let mut errors = Vec::with_capacity(sweeps + 1);
    let mut per_projection = record_projections.then(Vec::new);
    let mut x = x0.to_vec();
    iterates.push(x.clone());
    errors.push(error_of(&x));
    for _ in 0..sweeps {
        for p in &projectors {
            x = p.matrix().matvec(&x);
            if let Some(log) = per_projection.as_mut() {
                log.push(error_of(&x));
            }
        }
        iterates.push(x.clone());
        errors.push(error_of(&x));
    }
    let contraction = (1..=sweeps)
        .map(|k| {
            if errors[k - 1] > f64::MIN_POSITIVE {
                Some(errors[k] / errors[k - 1])
            } else {
                None
            }
        })
        .collect();
    Ok(MapTrace {
        sweeps,
        iterates,
        errors,
        contraction,
        per_projection_errors: per_projection,
    })
}

/// The one-sweep operator `P_n ... P_2 P_1`.
pub fn product_operator(sys: &SubspaceSystem) -> ComplexMatrix {
    let mut prod = ComplexMatrix::identity(sys.ambient_dim());
    for p in sys.projectors() {
        prod = p.matrix().mul(&prod);
    }
    prod
}

/// `||P_n ... P_2 P_1 - P_0||`: the one-sweep contraction of the error
/// component.
pub fn product_operator_norm(sys: &SubspaceSystem) -> Result<f64> {
    let prod = product_operator(sys);
    let p0 = sys.intersection_projector()?;
    operator_norm(&prod.sub(p0.matrix()))
}

/// One row of a rate check: measured `||(P_n...P_1)^k - P_0||` against the
/// k-th power of the one-sweep bound.
#[derive(Debug, Clone, Copy)]
pub struct RateEntry {
    pub sweep: usize,
    pub norm: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Result of [`rate_check`].
#[derive(Debug, Clone)]
pub struct RateReport {
    pub c: f64,
    pub measured_friedrichs: f64,
    /// One-sweep bound used: the closed form for n <= 3, otherwise the
    /// spectral upper bound.
    pub f_bound: f64,
    pub entries: Vec<RateEntry>,
}

impl RateReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Checks `||(P_n...P_1)^k - P_0|| <= f(c)^k + 1e-9` for `k = 1..=sweeps`,
/// where `f` is a valid one-sweep bound for the given `c`.
///
/// Fails if the measured Friedrichs number exceeds `c + 1e-9`, since the
/// bound only applies under that hypothesis.
pub fn rate_check(sys: &SubspaceSystem, c: f64, sweeps: usize) -> Result<RateReport> {
    let measured = sys.friedrichs_number()?;
    if measured > c + 1e-9 {
        return Err(Error::RatePrecondition { measured, c });
    }
    let f_bound = one_sweep_bound(sys.len(), c);
    let prod = product_operator(sys);
    let p0 = sys.intersection_projector()?;
    let mut power = ComplexMatrix::identity(sys.ambient_dim());
    let mut entries = Vec::with_capacity(sweeps);
    for k in 1..=sweeps {
        power = prod.mul(&power);
        let norm = operator_norm(&power.sub(p0.matrix()))?;
        let bound = f_bound.powi(k as i32) + 1e-9;
        entries.push(RateEntry {
            sweep: k,
            norm,
            bound,
            ok: norm <= bound,
        });
    }
    Ok(RateReport {
        c,
        measured_friedrichs: measured,
        f_bound,
        entries,
    })
}

/// A valid upper bound for the one-sweep contraction at angle parameter `c`:
/// exact closed forms for n = 2 and n = 3, the spectral bound otherwise.
pub fn one_sweep_bound(n: usize, c: f64) -> f64 {
    match n {
        2 => bounds::f2_closed(c),
        3 => bounds::f3_closed(c),
        _ => bounds::ub_ours(n, c),
    }
}
