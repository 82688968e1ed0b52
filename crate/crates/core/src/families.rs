//! Parameter arithmetic and stay-at-home diagnostics for strongly regular
//! families: orthogonal-array graphs, Steiner block graphs and conference
//! parameters.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{srg_recognize, SrgParams, SrgRecognition};
use crate::walk::{transition_matrix, TimeGrid};

/// Default threshold on the diagonal lower bound for a stay-at-home verdict.
pub const DEFAULT_VERDICT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StayAtHome,
    Indeterminate,
    MixingProne,
}

/// Stay-at-home diagnostic for one strongly regular family member.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyDiagnostic {
    pub params: SrgParams,
    /// Diagonal of the average mixing matrix, (1 + m_theta^2 + m_tau^2)/N^2
    /// on N vertices.
    pub avg_diag: f64,
    /// 2 avg_diag - 1.
    pub diag_lower_bound: f64,
    /// n^{1/4}-scaled empirical off-diagonal ceiling, when measured.
    pub off_diag_bound: Option<f64>,
    pub verdict: Verdict,
}

fn verdict_for(p: &SrgParams, avg_diag: f64, threshold: f64) -> Verdict {
    let dlb = 2.0 * avg_diag - 1.0;
    let irrational = (p.theta - p.theta.round()).abs() > 1e-9;
    if dlb >= threshold {
        Verdict::StayAtHome
    } else if irrational && avg_diag <= conference_floor(p.n) + 1e-9 {
        // a genuine conference graph sits at the diagonal floor, the
        // antithesis of staying at home
        Verdict::MixingProne
    } else {
        Verdict::Indeterminate
    }
}

/// (1 + (n-1)^2/2) / n^2: the minimum of the average-mixing diagonal over
/// all SRG multiplicity splits on n vertices.
fn conference_floor(n: usize) -> f64 {
    let nf = n as f64;
    (1.0 + 0.5 * (nf - 1.0) * (nf - 1.0)) / (nf * nf)
}

fn diagnostic(params: SrgParams, threshold: f64) -> FamilyDiagnostic {
    let nf = params.n as f64;
    let m1 = params.m_theta as f64;
    let m2 = params.m_tau as f64;
    let avg_diag = (1.0 + m1 * m1 + m2 * m2) / (nf * nf);
    FamilyDiagnostic {
        params,
        avg_diag,
        diag_lower_bound: 2.0 * avg_diag - 1.0,
        off_diag_bound: None,
        verdict: verdict_for(&params, avg_diag, threshold),
    }
}

/// Parameters of the graph of an OA(k, n):
/// (n^2, k(n-1), n-2+(k-1)(k-2), k(k-1)).
pub fn oa_parameters(k: usize, n: usize) -> Result<SrgParams> {
    if !(2..=n).contains(&k) {
        return Err(Error::InvalidParameters(format!(
            "OA graph parameters need 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    let p = SrgParams::new(n * n, k * (n - 1), n - 2 + (k - 1) * (k - 2), k * (k - 1))?;
    debug_assert_eq!(p.m_theta, k * (n - 1));
    debug_assert_eq!(p.m_tau, (n - 1) * (n + 1 - k));
    Ok(p)
}

/// Parameters of the block graph of a Steiner 2-(v, k, 1) design. When
/// every two blocks meet the graph is complete and carries no SRG
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub enum BlockGraphParams {
    Complete { blocks: usize },
    Srg(SrgParams),
}

pub fn steiner_parameters(v: usize, k: usize) -> Result<BlockGraphParams> {
    if k < 2 || v < k {
        return Err(Error::InvalidParameters(format!(
            "Steiner system needs 2 <= k <= v, got k={k}, v={v}"
        )));
    }
    if (v - 1) % (k - 1) != 0 || (v * (v - 1)) % (k * (k - 1)) != 0 {
        return Err(Error::InfeasibleParameters(format!(
            "2-({v},{k},1) design fails the divisibility conditions"
        )));
    }
    let blocks = v * (v - 1) / (k * (k - 1));
    let valency = k * (v - k) / (k - 1);
    if valency >= blocks - 1 || blocks == 1 {
        return Ok(BlockGraphParams::Complete { blocks });
    }
    let a = (v - 1) / (k - 1) - 2 + (k - 1) * (k - 1);
    let c = k * k;
    Ok(BlockGraphParams::Srg(SrgParams::new(blocks, valency, a, c)?))
}

/// Stay-at-home diagnostic for the OA(k, n) graph from closed-form
/// parameters alone.
pub fn oa_stayhome_check(k: usize, n: usize) -> Result<FamilyDiagnostic> {
    Ok(diagnostic(oa_parameters(k, n)?, DEFAULT_VERDICT_THRESHOLD))
}

/// Stay-at-home diagnostic for a Steiner block graph.
pub fn steiner_stayhome_check(v: usize, k: usize) -> Result<FamilyDiagnostic> {
    match steiner_parameters(v, k)? {
        BlockGraphParams::Complete { blocks } => Err(Error::InvalidParameters(format!(
            "block graph is the complete graph on {blocks} vertices, not strongly regular"
        ))),
        BlockGraphParams::Srg(p) => Ok(diagnostic(p, DEFAULT_VERDICT_THRESHOLD)),
    }
}

/// Measure the off-diagonal ceiling d with |U(t)_{a,b}| <= d / n^{1/4} on an
/// actual SRG instance, and check the multiplicity identity
/// (theta - tau)^2 = n k l / (m_theta m_tau).
pub fn offdiag_bound_verify(
    p: &SrgParams,
    g: &Graph,
    grid: &TimeGrid,
) -> Result<(f64, f64)> {
    match srg_recognize(g) {
        SrgRecognition::Srg(q) if q == *p => {}
        _ => {
            return Err(Error::PreconditionViolation(
                "graph does not realize the supplied SRG parameters".into(),
            ))
        }
    }
    let identity_residual = ((p.theta - p.tau).powi(2)
        - p.n as f64 * (p.k * p.ell()) as f64 / (p.m_theta * p.m_tau) as f64)
        .abs();
    if identity_residual > 1e-6 {
        return Err(Error::InvariantViolation(format!(
            "multiplicity identity residual {identity_residual:.3e}"
        )));
    }
    let d = crate::spectral::decompose(g, crate::spectral::DEFAULT_GROUPING_TOL)?;
    let mut max_off: f64 = 0.0;
    for t in grid.values() {
        let u = transition_matrix(&d, t);
        for i in 0..p.n {
            for j in 0..p.n {
                if i != j {
                    max_off = max_off.max(u.matrix[(i, j)].norm());
                }
            }
        }
    }
    Ok(((p.n as f64).powf(0.25) * max_off, identity_residual))
}

/// Average-mixing diagonal of a conference graph on n vertices, where
/// m_theta = m_tau = (n-1)/2.
pub fn conference_diagonal(n: usize) -> Result<f64> {
    if n % 4 != 1 {
        return Err(Error::InvalidParameters(format!(
            "conference graphs need n = 1 mod 4, got {n}"
        )));
    }
    let half = (n - 1) as f64 / 2.0;
    Ok((1.0 + 2.0 * half * half) / (n * n) as f64)
}
