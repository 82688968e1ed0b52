//! Grid sweeps and certificates: periodicity, perfect state transfer,
//! uniform mixing scans and the stay-at-home report.

use num_complex::Complex64;

use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::{decompose, SpectralDecomposition, DEFAULT_GROUPING_TOL};
use crate::walk::{average_mixing, lambda_min, mixing_matrix, transition_matrix, TimeGrid};

use nalgebra::DMatrix;

/// Margin below which a sandwich equality case is flagged as an event.
const EQUALITY_EVENT_TOL: f64 = 1e-6;
/// Denominator cap when deciding whether a phase argument is a rational
/// multiple of pi. Beyond this the phase is reported as not a recognized
/// root of unity.
const PHASE_DENOM_CAP: u64 = 10_000;

/// A unimodular phase reported as (modulus, argument in (-pi, pi]), with the
/// argument/pi recognized as p/q when a small-denominator fit exists.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Phase {
    pub modulus: f64,
    pub argument: f64,
    /// argument = (p/q) pi when recognized.
    pub root_of_unity: Option<(i64, u64)>,
}

impl Phase {
    pub fn from_complex(z: Complex64) -> Self {
        let argument = z.arg();
        let ratio = argument / std::f64::consts::PI;
        // accept p/q only when the fit is far better than a generic
        // irrational would allow at that denominator
        let root_of_unity = (1..=PHASE_DENOM_CAP).find_map(|q| {
            let p = (ratio * q as f64).round();
            let err = (ratio - p / q as f64).abs();
            (err <= 1e-6 / (q * q) as f64).then_some((p as i64, q))
        });
        Phase {
            modulus: z.norm(),
            argument,
            root_of_unity,
        }
    }
}

/// Ternary-search refinement of a scalar deficiency function around a
/// bracketing interval; 60 iterations pin the minimizer to machine scale.
fn refine_minimum<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

/// Scan a deficiency function over the grid, refine each interior local
/// minimum, and report hits below `tol` (positive times only) plus the
/// overall deficiency floor.
fn scan_deficiency<F: Fn(f64) -> f64>(f: &F, grid: &TimeGrid, tol: f64) -> (Vec<(f64, f64)>, f64) {
    let ts = grid.values();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let mut hits = Vec::new();
    let mut floor = f64::INFINITY;
    for i in 1..ts.len() - 1 {
        if ts[i] <= 1e-12 {
            continue;
        }
        if vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] {
            let (t, v) = refine_minimum(f, ts[i - 1].max(1e-12), ts[i + 1]);
            floor = floor.min(v);
            if v <= tol && t > 1e-9 {
                hits.push((t, v));
            }
        }
    }
    // endpoint minimum at the right edge
    if vals.len() >= 2 && vals[vals.len() - 1] < vals[vals.len() - 2] {
        floor = floor.min(vals[vals.len() - 1]);
        if vals[vals.len() - 1] <= tol {
            hits.push((ts[ts.len() - 1], vals[vals.len() - 1]));
        }
    }
    if floor.is_infinite() {
        floor = vals
            .iter()
            .zip(&ts)
            .filter(|(_, &t)| t > 1e-12)
            .map(|(&v, _)| v)
            .fold(f64::INFINITY, f64::min);
    }
    (hits, floor)
}

/// Result of a periodicity search at a vertex.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodicityHit {
    pub found: bool,
    pub time: Option<f64>,
    pub phase: Option<Phase>,
    /// Smallest 1 - |U(t)_{a,a}| seen over the grid.
    pub min_deficiency: f64,
}

/// Find a positive time in the grid with |U(t)_{a,a}| >= 1 - tol, refined by
/// ternary search on the deficiency.
pub fn periodicity_check(
    d: &SpectralDecomposition,
    a: usize,
    grid: &TimeGrid,
    tol: f64,
) -> PeriodicityHit {
    let f = |t: f64| 1.0 - transition_matrix(d, t).matrix[(a, a)].norm();
    let (hits, floor) = scan_deficiency(&f, grid, tol);
    match hits.first() {
        Some(&(t, _)) => PeriodicityHit {
            found: true,
            time: Some(t),
            phase: Some(Phase::from_complex(transition_matrix(d, t).matrix[(a, a)])),
            min_deficiency: floor,
        },
        None => PeriodicityHit {
            found: false,
            time: None,
            phase: None,
            min_deficiency: floor,
        },
    }
}

/// Result of a perfect state transfer search between two vertices.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PstHit {
    pub found: bool,
    pub time: Option<f64>,
    pub phase: Option<Phase>,
    /// Smallest 1 - |U(t)_{b,a}| seen over the grid.
    pub min_deficiency: f64,
    /// |U(t)_{a,b} - U(t)_{b,a}| at the hit (symmetry of transfer).
    pub symmetry_residual: Option<f64>,
}

/// Search for perfect state transfer from a to b over the grid.
pub fn pst_detect(
    d: &SpectralDecomposition,
    a: usize,
    b: usize,
    grid: &TimeGrid,
    tol: f64,
) -> Result<PstHit> {
    if a == b {
        return Err(crate::error::Error::PreconditionViolation(
            "perfect state transfer needs distinct vertices".into(),
        ));
    }
    let f = |t: f64| 1.0 - transition_matrix(d, t).matrix[(b, a)].norm();
    let (hits, floor) = scan_deficiency(&f, grid, tol);
    Ok(match hits.first() {
        Some(&(t, _)) => {
            let u = transition_matrix(d, t).matrix;
            PstHit {
                found: true,
                time: Some(t),
                phase: Some(Phase::from_complex(u[(b, a)])),
                min_deficiency: floor,
                symmetry_residual: Some((u[(a, b)] - u[(b, a)]).norm()),
            }
        }
        None => PstHit {
            found: false,
            time: None,
            phase: None,
            min_deficiency: floor,
            symmetry_residual: None,
        },
    })
}

/// Uniform-mixing scan output: refined hit times with their flatness
/// deficiency, and the deficiency floor over the whole grid.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformMixingScan {
    pub hits: Vec<(f64, f64)>,
    pub min_deficiency: f64,
}

/// Times where U(t) e_a is flat within tol (all entries of modulus
/// 1/sqrt(n)), refined by local search on the flatness deficiency.
pub fn scan_uniform_mixing(
    g: &Graph,
    a: usize,
    grid: &TimeGrid,
    tol: f64,
) -> Result<UniformMixingScan> {
    let d = decompose(g, DEFAULT_GROUPING_TOL)?;
    let flat = 1.0 / (g.n() as f64).sqrt();
    let f = move |t: f64| {
        let u = transition_matrix(&d, t);
        (0..u.matrix.nrows())
            .map(|v| (u.matrix[(v, a)].norm() - flat).abs())
            .fold(0.0f64, f64::max)
    };
    let (hits, floor) = scan_deficiency(&f, grid, tol);
    Ok(UniformMixingScan {
        hits,
        min_deficiency: floor,
    })
}

/// One grid point of the stay-at-home sweep.
#[derive(Debug, Clone, Copy, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesRow {
    pub t: f64,
    pub min_diag: f64,
    pub max_offdiag_u: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
}

/// Stay-at-home certificate: diagonal minima, off-diagonal maxima and the
/// PSD-sandwich margins over a time grid.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MixingReport {
    pub n: usize,
    /// min over t and a of M(t)_{a,a}.
    pub min_diag: f64,
    /// max over t and a != b of |U(t)_{a,b}|.
    pub max_offdiag_u: f64,
    /// Smallest diagonal entry of the average mixing matrix.
    pub avg_diag_min: f64,
    /// 2 avg_diag_min - 1, the t-independent diagonal lower bound.
    pub diag_lower_bound: f64,
    /// 1 - (n-1) c^2 / n^2 with c = n * max_offdiag_u: the diagonal bound
    /// implied by the observed off-diagonal ceiling.
    pub observation_bound: f64,
    pub min_lower_margin: f64,
    pub min_upper_margin: f64,
    /// Positive times where M(t) is within 1e-6 of I (near-periodicity).
    pub identity_equality_times: Vec<f64>,
    /// Times where M(t) is within 1e-6 of 2 Mhat - I (complete-graph case).
    pub sandwich_equality_times: Vec<f64>,
    pub series: Vec<SeriesRow>,
}

pub fn stay_at_home_report(g: &Graph, grid: &TimeGrid, _tol: f64) -> Result<MixingReport> {
    let n = g.n();
    let d = decompose(g, DEFAULT_GROUPING_TOL)?;
    let mhat = average_mixing(&d).matrix;
    let identity = DMatrix::identity(n, n);
    let two_mhat_minus_i = &mhat * 2.0 - &identity;

    let mut series = Vec::with_capacity(grid.points);
    let mut min_diag = f64::INFINITY;
    let mut max_offdiag_u: f64 = 0.0;
    let mut min_lower = f64::INFINITY;
    let mut min_upper = f64::INFINITY;
    let mut identity_times = Vec::new();
    let mut sandwich_times = Vec::new();

    for t in grid.values() {
        let u = transition_matrix(&d, t);
        let m = mixing_matrix(&d, t).matrix;
        let mut row_min_diag = f64::INFINITY;
        let mut row_max_off: f64 = 0.0;
        for i in 0..n {
            row_min_diag = row_min_diag.min(m[(i, i)]);
            for j in 0..n {
                if i != j {
                    row_max_off = row_max_off.max(u.matrix[(i, j)].norm());
                }
            }
        }
        let lower = lambda_min(&(&identity - &m));
        let upper = lambda_min(&(&m - &two_mhat_minus_i));
        if t > 1e-12 && crate::spectral::max_abs(&(&m - &identity)) <= EQUALITY_EVENT_TOL {
            identity_times.push(t);
        }
        if crate::spectral::max_abs(&(&m - &two_mhat_minus_i)) <= EQUALITY_EVENT_TOL {
            sandwich_times.push(t);
        }
        min_diag = min_diag.min(row_min_diag);
        max_offdiag_u = max_offdiag_u.max(row_max_off);
        min_lower = min_lower.min(lower);
        min_upper = min_upper.min(upper);
        series.push(SeriesRow {
            t,
            min_diag: row_min_diag,
            max_offdiag_u: row_max_off,
            lower_margin: lower,
            upper_margin: upper,
        });
    }

    let avg_diag_min = (0..n).map(|i| mhat[(i, i)]).fold(f64::INFINITY, f64::min);
    let c = n as f64 * max_offdiag_u;
    let nf = n as f64;
    Ok(MixingReport {
        n,
        min_diag,
        max_offdiag_u,
        avg_diag_min,
        diag_lower_bound: 2.0 * avg_diag_min - 1.0,
        observation_bound: 1.0 - (nf - 1.0) * c * c / (nf * nf),
        min_lower_margin: min_lower,
        min_upper_margin: min_upper,
        identity_equality_times: identity_times,
        sandwich_equality_times: sandwich_times,
        series,
    })
}
