//! Continuous-time walk dynamics: U(t) = exp(itA) evaluated through the
//! spectral decomposition, mixing matrices, the average mixing matrix and
//! the bounds derived from them.

mod cone;
mod scan;

pub use cone::{cone_analysis, verify_apex_uniform_mixing, ConeAnalysis};
pub use scan::{
    periodicity_check, pst_detect, scan_uniform_mixing, stay_at_home_report, MixingReport,
    PeriodicityHit, Phase, PstHit, SeriesRow, UniformMixingScan,
};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{complement, regularity, Graph};
use crate::spectral::{decompose, SpectralDecomposition, DEFAULT_GROUPING_TOL};

/// Uniform time grid on [start, end] with at least two points.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameters("time grid needs >= 2 points".into()));
        }
        if !(start < end) {
            return Err(Error::InvalidParameters(format!(
                "time grid needs start < end, got [{start}, {end}]"
            )));
        }
        Ok(TimeGrid { start, end, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.end - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + step * i as f64).collect()
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }
}

/// Default sweep grid: 512 points covering one quasi-period 2 pi / g_min of
/// the slowest beat, where g_min is the smallest gap between distinct
/// eigenvalues.
pub fn default_grid(d: &SpectralDecomposition) -> TimeGrid {
    let g_min = d.min_gap();
    let end = if g_min.is_finite() && g_min > 0.0 {
        2.0 * std::f64::consts::PI / g_min
    } else {
        2.0 * std::f64::consts::PI
    };
    TimeGrid::new(0.0, end, 512).expect("default grid parameters are valid")
}

/// U(t) = sum_r exp(i theta_r t) E_r.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    pub matrix: DMatrix<Complex64>,
    pub time: f64,
}

impl UnitaryMatrix {
    /// Max-entry residual of U U* - I.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        let prod = &self.matrix * self.matrix.adjoint();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - expect).norm());
            }
        }
        worst
    }
}

/// Entrywise squared moduli of U(t); doubly stochastic.
#[derive(Debug, Clone)]
pub struct MixingMatrix {
    pub matrix: DMatrix<f64>,
    pub time: f64,
}

impl MixingMatrix {
    /// Worst row/column sum deviation from 1.
    pub fn stochasticity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            worst = worst.max((self.matrix.row(i).sum() - 1.0).abs());
            worst = worst.max((self.matrix.column(i).sum() - 1.0).abs());
        }
        worst
    }
}

/// The average mixing matrix, sum_r E_r Schur-squared.
#[derive(Debug, Clone)]
pub struct AverageMixing {
    pub matrix: DMatrix<f64>,
}

impl AverageMixing {
    pub fn min_eigenvalue(&self) -> f64 {
        lambda_min(&self.matrix)
    }
}

pub(crate) fn lambda_min(m: &DMatrix<f64>) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &x| acc.min(x))
}

/// Evaluate U(t) from a spectral decomposition.
pub fn transition_matrix(d: &SpectralDecomposition, t: f64) -> UnitaryMatrix {
    let n = d.n();
    let mut matrix = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (theta, e) in d.eigenvalues().iter().zip(d.idempotents()) {
        let phase = Complex64::new(0.0, theta * t).exp();
        for i in 0..n {
            for j in 0..n {
                matrix[(i, j)] += phase * e[(i, j)];
            }
        }
    }
    UnitaryMatrix { matrix, time: t }
}

/// M(t): entrywise |U(t)|^2.
pub fn mixing_matrix(d: &SpectralDecomposition, t: f64) -> MixingMatrix {
    let u = transition_matrix(d, t);
    MixingMatrix {
        matrix: u.matrix.map(|z| z.norm_sqr()),
        time: t,
    }
}

/// Average mixing matrix from the idempotents (never by time averaging).
pub fn average_mixing(d: &SpectralDecomposition) -> AverageMixing {
    let n = d.n();
    let mut matrix = DMatrix::zeros(n, n);
    for e in d.idempotents() {
        matrix += e.map(|x| x * x);
    }
    AverageMixing { matrix }
}

/// PSD-sandwich margins (lambda_min(I - M(t)), lambda_min(M(t) - 2 Mhat + I)).
/// Either going below -tol signals a broken decomposition.
pub fn psd_sandwich(d: &SpectralDecomposition, t: f64, tol: f64) -> Result<(f64, f64)> {
    let m = mixing_matrix(d, t).matrix;
    let mhat = average_mixing(d).matrix;
    let n = d.n();
    let identity = DMatrix::identity(n, n);
    let lower = lambda_min(&(&identity - &m));
    let upper = lambda_min(&(&m - &mhat * 2.0 + &identity));
    if lower < -tol || upper < -tol {
        return Err(Error::InvariantViolation(format!(
            "PSD sandwich violated at t={t}: lower {lower:.3e}, upper {upper:.3e}"
        )));
    }
    Ok((lower, upper))
}

/// 2 Mhat_{a,a} - 1: a time-independent lower bound on M(t)_{a,a}.
pub fn diag_lower_from_average(d: &SpectralDecomposition, a: usize) -> f64 {
    2.0 * average_mixing(d).matrix[(a, a)] - 1.0
}

/// Max over the grid and all entries of |(U_comp(t) - e^{-it} U_g(-t))_{a,b}|
/// for a regular graph g; bounded by 2/n. (U_comp(t) = e^{-it} U_g(-t) e^{itJ},
/// and the rank-one exponential differs from I by entries of modulus <= 2/n.)
pub fn complement_residual(g: &Graph, grid: &TimeGrid) -> Result<f64> {
    regularity(g).ok_or_else(|| {
        Error::PreconditionViolation("complement_residual needs a regular graph".into())
    })?;
    let d = decompose(g, DEFAULT_GROUPING_TOL)?;
    let dc = decompose(&complement(g), DEFAULT_GROUPING_TOL)?;
    let mut worst: f64 = 0.0;
    for t in grid.values() {
        let u = transition_matrix(&d, t).matrix;
        let uc = transition_matrix(&dc, t).matrix;
        let phase = Complex64::new(0.0, -t).exp();
        for (zc, z) in uc.iter().zip(u.iter()) {
            worst = worst.max((zc - phase * z.conj()).norm());
        }
    }
    Ok(worst)
}

/// Cross-block entry of the join transition matrix,
/// (exp(i mu1 t) - exp(i mu2 t)) / sqrt(Delta).
pub fn join_apex_entry(k: usize, ell: usize, m: usize, n: usize, t: f64) -> Complex64 {
    let (mu1, mu2, sqrt_delta) = crate::spectral::join_quotient_eigenvalues(k, ell, m, n);
    (Complex64::new(0.0, mu1 * t).exp() - Complex64::new(0.0, mu2 * t).exp()) / sqrt_delta
}

/// U_{X+Y}(t)_{a,b} - U_X(t)_{a,b} for a, b in the k-regular side X.
pub fn join_ab_residual(k: usize, ell: usize, m: usize, n: usize, t: f64) -> Complex64 {
    let (mu1, mu2, sqrt_delta) = crate::spectral::join_quotient_eigenvalues(k, ell, m, n);
    let kf = k as f64;
    let e1 = Complex64::new(0.0, mu1 * t).exp();
    let e2 = Complex64::new(0.0, mu2 * t).exp();
    let ek = Complex64::new(0.0, kf * t).exp();
    (e1 * ((kf - mu2) / sqrt_delta) - e2 * ((kf - mu1) / sqrt_delta) - ek) / m as f64
}

/// sum_r |(E_r)_{a,b}|: a t-independent bound on |U(t)_{a,b}|.
pub fn abs_entry_bound(d: &SpectralDecomposition, a: usize, b: usize) -> f64 {
    d.idempotents().iter().map(|e| e[(a, b)].abs()).sum()
}
