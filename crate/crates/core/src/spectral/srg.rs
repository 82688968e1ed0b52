//! Strongly regular graphs: parameter arithmetic, recognition via the
//! A^2 = kI + aA + c(J - I - A) identity, and the closed-form spectral
//! idempotents.

use nalgebra::DMatrix;

use super::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::graph::{regularity, Graph};

/// Tolerance for accepting the multiplicity formulas as integers.
const MULT_INT_TOL: f64 = 1e-6;

/// Parameters (n, k; a, c) of a strongly regular graph, with the derived
/// eigenvalues theta > tau and their multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub c: usize,
    pub theta: f64,
    pub tau: f64,
    pub m_theta: usize,
    pub m_tau: usize,
}

impl SrgParams {
    pub fn new(n: usize, k: usize, a: usize, c: usize) -> Result<Self> {
        if !(0 < k && k < n - 1) {
            return Err(Error::InvalidParameters(format!(
                "SRG needs 0 < k < n-1, got n={n}, k={k}"
            )));
        }
        // edge count between a vertex's neighbours and non-neighbours
        if k * (k - a - 1) != (n - k - 1) * c {
            return Err(Error::InfeasibleParameters(format!(
                "counting identity k(k-a-1) = (n-k-1)c fails for ({n},{k};{a},{c})"
            )));
        }
        let (af, cf, kf, nf) = (a as f64, c as f64, k as f64, n as f64);
        let disc = ((af - cf).powi(2) + 4.0 * (kf - cf)).sqrt();
        let theta = 0.5 * ((af - cf) + disc);
        let tau = 0.5 * ((af - cf) - disc);
        let m_theta = ((nf - 1.0) * (-tau) - kf) / (theta - tau);
        let m_tau = ((nf - 1.0) * theta + kf) / (theta - tau);
        for m in [m_theta, m_tau] {
            if (m - m.round()).abs() > MULT_INT_TOL || m.round() < 0.0 {
                return Err(Error::InfeasibleParameters(format!(
                    "non-integral multiplicity {m} for ({n},{k};{a},{c})"
                )));
            }
        }
        Ok(SrgParams {
            n,
            k,
            a,
            c,
            theta,
            tau,
            m_theta: m_theta.round() as usize,
            m_tau: m_tau.round() as usize,
        })
    }

    /// Valency of the complement, n - 1 - k.
    pub fn ell(&self) -> usize {
        self.n - 1 - self.k
    }
}

/// Eigenvalues and multiplicities (theta, tau, m_theta, m_tau).
pub fn srg_spectrum(p: &SrgParams) -> (f64, f64, usize, usize) {
    (p.theta, p.tau, p.m_theta, p.m_tau)
}

/// Outcome of strong-regularity recognition.
#[derive(Debug, Clone)]
pub enum SrgRecognition {
    Srg(SrgParams),
    NotSrg { reason: String },
}

impl SrgRecognition {
    pub fn params(&self) -> Option<&SrgParams> {
        match self {
            SrgRecognition::Srg(p) => Some(p),
            SrgRecognition::NotSrg { .. } => None,
        }
    }
}

/// Check A^2 = kI + aA + c(J - I - A) entrywise.
pub fn srg_recognize(g: &Graph) -> SrgRecognition {
    let n = g.n();
    let Some(k) = regularity(g) else {
        return SrgRecognition::NotSrg {
            reason: "not regular".into(),
        };
    };
    if k == 0 || k == n - 1 {
        return SrgRecognition::NotSrg {
            reason: format!("valency {k} violates 0 < k < n-1"),
        };
    }
    let adj = g.adjacency();
    let a2 = adj * adj;
    let mut a_param: Option<usize> = None;
    let mut c_param: Option<usize> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let common = a2[(i, j)] as usize;
            let slot = if g.has_edge(i, j) { &mut a_param } else { &mut c_param };
            match slot {
                None => *slot = Some(common),
                Some(v) if *v == common => {}
                Some(v) => {
                    return SrgRecognition::NotSrg {
                        reason: format!(
                            "pair ({i},{j}) has {common} common neighbours, expected {v}"
                        ),
                    }
                }
            }
        }
    }
    let (a, c) = (a_param.unwrap_or(0), c_param.unwrap_or(0));
    match SrgParams::new(n, k, a, c) {
        Ok(p) => SrgRecognition::Srg(p),
        Err(e) => SrgRecognition::NotSrg {
            reason: e.to_string(),
        },
    }
}

/// Closed-form spectral decomposition of a strongly regular graph:
/// E0 = J/n, and E1, E2 expressed through I, A and the complement adjacency.
/// Coincident eigenvalues (theta = k for disconnected mK_s) are merged so
/// the result satisfies the decomposition invariants.
pub fn srg_idempotents(p: &SrgParams, g: &Graph) -> Result<SpectralDecomposition> {
    match srg_recognize(g) {
        SrgRecognition::Srg(q) if q == *p => {}
        SrgRecognition::Srg(q) => {
            return Err(Error::PreconditionViolation(format!(
                "graph is SRG({},{};{},{}) but parameters ({},{};{},{}) were supplied",
                q.n, q.k, q.a, q.c, p.n, p.k, p.a, p.c
            )))
        }
        SrgRecognition::NotSrg { reason } => {
            return Err(Error::PreconditionViolation(format!(
                "graph is not strongly regular: {reason}"
            )))
        }
    }
    let n = p.n;
    let nf = n as f64;
    let adj = g.adjacency();
    let comp = DMatrix::from_fn(n, n, |i, j| {
        if i != j && adj[(i, j)] == 0.0 {
            1.0
        } else {
            0.0
        }
    });
    let identity = DMatrix::identity(n, n);
    let e0 = DMatrix::from_element(n, n, 1.0 / nf);
    let shell = |ev: f64, mult: usize| -> DMatrix<f64> {
        let scale = mult as f64 / nf;
        (&identity + adj * (ev / p.k as f64) - &comp * ((ev + 1.0) / p.ell() as f64)) * scale
    };
    let e1 = shell(p.theta, p.m_theta);
    let e2 = shell(p.tau, p.m_tau);

    let mut triples = vec![
        (p.k as f64, e0, 1usize),
        (p.theta, e1, p.m_theta),
        (p.tau, e2, p.m_tau),
    ];
    triples.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite eigenvalues"));
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut idempotents: Vec<DMatrix<f64>> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for (ev, e, m) in triples {
        if let Some(last) = eigenvalues.last() {
            if (last - ev).abs() < 1e-9 {
                *idempotents.last_mut().unwrap() += e;
                *multiplicities.last_mut().unwrap() += m;
                continue;
            }
        }
        eigenvalues.push(ev);
        idempotents.push(e);
        multiplicities.push(m);
    }
    SpectralDecomposition::new(eigenvalues, idempotents, multiplicities)
}
