//! Closed-form spectral data for joins of regular graphs.
//!
//! For a k-regular X on m vertices joined to an l-regular Y on n vertices,
//! the quotient over the partition (V(X), V(Y)) contributes two eigenvalues
//! mu1 > mu2 with rank-one idempotents N1, N2; every other eigenvector of X
//! or Y orthogonal to the constant vector lifts unchanged.

use nalgebra::DMatrix;

use super::{decompose, max_abs, SpectralDecomposition, DEFAULT_GROUPING_TOL};
use crate::error::{Error, Result};
use crate::graph::{join, regularity, Graph};

/// Quotient eigenvalues mu1 > mu2 of the join, and sqrt(Delta) where
/// Delta = (k - l)^2 + 4mn.
pub fn join_quotient_eigenvalues(k: usize, ell: usize, m: usize, n: usize) -> (f64, f64, f64) {
    let (k, ell, m, n) = (k as f64, ell as f64, m as f64, n as f64);
    let sqrt_delta = ((k - ell).powi(2) + 4.0 * m * n).sqrt();
    let mu1 = 0.5 * (k + ell + sqrt_delta);
    let mu2 = 0.5 * (k + ell - sqrt_delta);
    (mu1, mu2, sqrt_delta)
}

/// The rank-one idempotents N1, N2 belonging to mu1 and mu2, as
/// (m+n) x (m+n) matrices with X's block first.
pub fn join_idempotents(k: usize, ell: usize, m: usize, n: usize) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let (mu1, mu2, sqrt_delta) = join_quotient_eigenvalues(k, ell, m, n);
    let kf = k as f64;
    let mf = m as f64;
    if kf - mu2 <= 0.0 || mu1 - kf <= 0.0 {
        return Err(Error::NumericalFailure(format!(
            "quotient eigenvalues do not straddle the valency: k={k}, mu1={mu1}, mu2={mu2}"
        )));
    }
    let total = m + n;
    let block = |top: f64, cross: f64, bottom: f64, norm: f64| {
        DMatrix::from_fn(total, total, |i, j| {
            let v = match (i < m, j < m) {
                (true, true) => top,
                (false, false) => bottom,
                _ => cross,
            };
            v / norm
        })
    };
    let n1 = block(
        (kf - mu2) * (kf - mu2),
        mf * (kf - mu2),
        mf * mf,
        mf * sqrt_delta * (kf - mu2),
    );
    let n2 = block(
        (kf - mu1) * (kf - mu1),
        mf * (kf - mu1),
        mf * mf,
        mf * sqrt_delta * (mu1 - kf),
    );
    Ok((n1, n2))
}

/// Where a term of the refined join decomposition comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermSource {
    /// Non-principal idempotent of X, embedded as diag(E_r, 0).
    FromX { valency_split: bool },
    /// Non-principal idempotent of Y, embedded as diag(0, F_s).
    FromY { valency_split: bool },
}

/// One inherited term theta_r * E_hat_r of the refined decomposition.
#[derive(Debug, Clone)]
pub struct JoinTerm {
    pub eigenvalue: f64,
    pub idempotent: DMatrix<f64>,
    pub source: TermSource,
}

/// Refined spectral decomposition of a join of regular graphs. The quotient
/// part (N1, N2) is exact; the inherited terms come from the numerical
/// decompositions of the two sides.
#[derive(Debug, Clone)]
pub struct JoinSpectralData {
    pub mu1: f64,
    pub mu2: f64,
    pub delta: f64,
    pub sqrt_delta: f64,
    pub n1: DMatrix<f64>,
    pub n2: DMatrix<f64>,
    pub inherited: Vec<JoinTerm>,
    /// Max-entry error of mu1 N1 + mu2 N2 + sum theta_r E_hat_r against the
    /// join adjacency.
    pub reconstruction_residual: f64,
}

impl JoinSpectralData {
    /// All (eigenvalue, idempotent) pairs: quotient terms then inherited.
    pub fn all_terms(&self) -> Vec<(f64, &DMatrix<f64>)> {
        let mut out = vec![(self.mu1, &self.n1), (self.mu2, &self.n2)];
        out.extend(self.inherited.iter().map(|t| (t.eigenvalue, &t.idempotent)));
        out
    }

    pub fn term_count(&self) -> usize {
        2 + self.inherited.len()
    }

    /// Max-entry error of the resolution of identity over all terms.
    pub fn resolution_residual(&self) -> f64 {
        let n = self.n1.nrows();
        let mut sum = &self.n1 + &self.n2;
        for t in &self.inherited {
            sum += &t.idempotent;
        }
        max_abs(&(sum - DMatrix::identity(n, n)))
    }
}

fn embed(e: &DMatrix<f64>, total: usize, offset: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(total, total);
    let s = e.nrows();
    out.view_mut((offset, offset), (s, s)).copy_from(e);
    out
}

/// Split a side's decomposition into inherited terms: every non-principal
/// idempotent embeds directly; a disconnected side's valency idempotent is
/// split into the constant part (absorbed by N1, N2) and the remainder,
/// which is kept as a tagged extra term with the same eigenvalue.
fn inherited_terms(
    d: &SpectralDecomposition,
    total: usize,
    offset: usize,
    from_x: bool,
) -> Vec<JoinTerm> {
    let s = d.n();
    let mut terms = Vec::new();
    for (r, (theta, e)) in d.eigenvalues().iter().zip(d.idempotents()).enumerate() {
        if r == 0 {
            // valency eigenspace: subtract the projection onto constants
            if d.multiplicities()[0] > 1 {
                let j_over_s = DMatrix::from_element(s, s, 1.0 / s as f64);
                let remainder = e - j_over_s;
                terms.push(JoinTerm {
                    eigenvalue: *theta,
                    idempotent: embed(&remainder, total, offset),
                    source: if from_x {
                        TermSource::FromX { valency_split: true }
                    } else {
                        TermSource::FromY { valency_split: true }
                    },
                });
            }
        } else {
            terms.push(JoinTerm {
                eigenvalue: *theta,
                idempotent: embed(e, total, offset),
                source: if from_x {
                    TermSource::FromX { valency_split: false }
                } else {
                    TermSource::FromY { valency_split: false }
                },
            });
        }
    }
    terms
}

/// Assemble the refined decomposition of join(x, y) for regular x and y and
/// verify it reconstructs the join adjacency within `tol`.
pub fn join_decomposition(x: &Graph, y: &Graph, tol: f64) -> Result<JoinSpectralData> {
    let k = regularity(x).ok_or_else(|| {
        Error::PreconditionViolation("join_decomposition: first graph is not regular".into())
    })?;
    let ell = regularity(y).ok_or_else(|| {
        Error::PreconditionViolation("join_decomposition: second graph is not regular".into())
    })?;
    let (m, n) = (x.n(), y.n());
    let total = m + n;

    let (mu1, mu2, sqrt_delta) = join_quotient_eigenvalues(k, ell, m, n);
    let (n1, n2) = join_idempotents(k, ell, m, n)?;

    let dx = decompose(x, DEFAULT_GROUPING_TOL)?;
    let dy = decompose(y, DEFAULT_GROUPING_TOL)?;
    let mut inherited = inherited_terms(&dx, total, 0, true);
    inherited.extend(inherited_terms(&dy, total, m, false));

    let mut recon = &n1 * mu1 + &n2 * mu2;
    for t in &inherited {
        recon += &t.idempotent * t.eigenvalue;
    }
    let target = join(x, y);
    let residual = max_abs(&(recon - target.adjacency()));
    if residual > tol {
        return Err(Error::InvariantViolation(format!(
            "join reconstruction residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )));
    }

    Ok(JoinSpectralData {
        mu1,
        mu2,
        delta: sqrt_delta * sqrt_delta,
        sqrt_delta,
        n1,
        n2,
        inherited,
        reconstruction_residual: residual,
    })
}
