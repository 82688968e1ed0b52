//! Spectral decompositions of adjacency matrices: the generic numerical
//! route, the closed forms for joins of regular graphs and for strongly
//! regular graphs, eigenvalue supports and the ratio condition.

mod join;
pub(crate) mod ratio;
mod srg;

pub use join::{join_decomposition, join_idempotents, join_quotient_eigenvalues, JoinSpectralData, JoinTerm, TermSource};
pub use ratio::{ratio_condition, RatioOutcome, RatioWitness};
pub use srg::{srg_idempotents, srg_recognize, srg_spectrum, SrgParams, SrgRecognition};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default relative tolerance for merging numerically coincident eigenvalues.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-8;

/// A = sum_r theta_r E_r with distinct eigenvalues in strictly descending
/// order and orthogonal projection idempotents E_r.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    idempotents: Vec<DMatrix<f64>>,
    multiplicities: Vec<usize>,
}

impl SpectralDecomposition {
    pub fn new(
        eigenvalues: Vec<f64>,
        idempotents: Vec<DMatrix<f64>>,
        multiplicities: Vec<usize>,
    ) -> Result<Self> {
        if eigenvalues.len() != idempotents.len() || eigenvalues.len() != multiplicities.len() {
            return Err(Error::InvalidParameters(
                "mismatched eigenvalue/idempotent/multiplicity counts".into(),
            ));
        }
        if eigenvalues.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameters(
                "eigenvalues must be strictly descending".into(),
            ));
        }
        Ok(SpectralDecomposition {
            eigenvalues,
            idempotents,
            multiplicities,
        })
    }

    pub fn n(&self) -> usize {
        self.idempotents.first().map_or(0, |e| e.nrows())
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn idempotents(&self) -> &[DMatrix<f64>] {
        &self.idempotents
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Largest |theta_r|.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, &t| m.max(t.abs()))
    }

    /// Smallest nonzero gap between consecutive distinct eigenvalues.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// Reconstruct sum_r theta_r E_r.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut acc = DMatrix::zeros(n, n);
        for (theta, e) in self.eigenvalues.iter().zip(&self.idempotents) {
            acc += e * *theta;
        }
        acc
    }

    /// Max-entry residuals for the projection axioms: (idempotency,
    /// mutual annihilation, resolution of identity).
    pub fn invariant_residuals(&self) -> (f64, f64, f64) {
        let n = self.n();
        let mut idem: f64 = 0.0;
        let mut annih: f64 = 0.0;
        for (r, e) in self.idempotents.iter().enumerate() {
            idem = idem.max(max_abs(&(e * e - e)));
            for f in &self.idempotents[r + 1..] {
                annih = annih.max(max_abs(&(e * f)));
            }
        }
        let sum: DMatrix<f64> = self
            .idempotents
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, e| acc + e);
        let resolution = max_abs(&(sum - DMatrix::identity(n, n)));
        (idem, annih, resolution)
    }
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc: f64, &x| acc.max(x.abs()))
}

/// Full symmetric eigendecomposition of the adjacency matrix, with
/// eigenvalues closer than `grouping_tol * max(1, spectral radius)` merged
/// into a single idempotent.
pub fn decompose(g: &Graph, grouping_tol: f64) -> Result<SpectralDecomposition> {
    let n = g.n();
    let eig = SymmetricEigen::new(g.adjacency().clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("symmetric eigenvalues are finite")
    });

    let radius = eig.eigenvalues.iter().fold(0.0f64, |m, &t| m.max(t.abs()));
    let merge_tol = grouping_tol * radius.max(1.0);

    let mut eigenvalues = Vec::new();
    let mut idempotents: Vec<DMatrix<f64>> = Vec::new();
    let mut multiplicities = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        // chain-merge values within merge_tol of their predecessor
        while j + 1 < n
            && eig.eigenvalues[order[j]] - eig.eigenvalues[order[j + 1]] <= merge_tol
        {
            j += 1;
        }
        let group = &order[i..=j];
        let mean = group.iter().map(|&c| eig.eigenvalues[c]).sum::<f64>() / group.len() as f64;
        let mut e = DMatrix::zeros(n, n);
        for &c in group {
            let v = eig.eigenvectors.column(c);
            e += &v * v.transpose();
        }
        // symmetrize to kill eigensolver drift
        let e = (&e + e.transpose()) * 0.5;
        eigenvalues.push(mean);
        idempotents.push(e);
        multiplicities.push(group.len());
        i = j + 1;
    }
    SpectralDecomposition::new(eigenvalues, idempotents, multiplicities)
}

/// Eigenvalue support of vertex `a`: indices r with (E_r)_{a,a} > tol.
/// Since each E_r is positive semidefinite, the diagonal entry vanishes
/// exactly when E_r e_a = 0.
pub fn eigenvalue_support(d: &SpectralDecomposition, a: usize, tol: f64) -> Vec<usize> {
    d.idempotents()
        .iter()
        .enumerate()
        .filter(|(_, e)| e[(a, a)] > tol)
        .map(|(r, _)| r)
        .collect()
}
