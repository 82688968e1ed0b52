//! Apex dynamics of cones over regular graphs: periodicity, phases and
//! local uniform mixing.

use crate::error::{Error, Result};
use crate::graph::{cone, regularity, Graph};
use crate::spectral::{decompose, DEFAULT_GROUPING_TOL};
use crate::walk::transition_matrix;

use std::f64::consts::PI;

/// Closed-form apex data for the cone over an l-regular graph on n vertices.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeAnalysis {
    pub ell: usize,
    pub n: usize,
    /// Apex period 2 pi / sqrt(l^2 + 4n).
    pub period: f64,
    /// Phase angle t mu1 at the first period: pi l / sqrt(l^2 + 4n) + pi.
    pub phase_angle: f64,
    /// Whether l^2 + 4n is a perfect square, making the phase a root of unity.
    pub root_of_unity: bool,
    /// Time of apex uniform mixing; exists exactly when l <= 2.
    pub uniform_mixing_time: Option<f64>,
    /// l^2 / (l^2 + 4n), the t-independent lower bound on |U(t)_{apex,apex}|.
    pub return_bound: f64,
}

fn is_perfect_square(x: u64) -> bool {
    let r = x.isqrt();
    r * r == x
}

/// Evaluate the closed forms for the cone apex. Requires that an l-regular
/// graph on n vertices exists (l <= n-1 and l*n even).
pub fn cone_analysis(ell: usize, n: usize) -> Result<ConeAnalysis> {
    if n == 0 || ell + 1 > n {
        return Err(Error::InvalidParameters(format!(
            "no {ell}-regular graph on {n} vertices"
        )));
    }
    if ell * n % 2 != 0 {
        return Err(Error::InvalidParameters(format!(
            "no {ell}-regular graph on {n} vertices (odd handshake count)"
        )));
    }
    let disc = (ell * ell + 4 * n) as f64;
    let sqrt_disc = disc.sqrt();
    let uniform_mixing_time = (ell <= 2).then(|| {
        // |e^{it sqrt(disc)} - 1| = sqrt(disc)/sqrt(n+1), solvable iff l <= 2
        let cos_angle = 1.0 - disc / (2.0 * (n as f64 + 1.0));
        cos_angle.clamp(-1.0, 1.0).acos() / sqrt_disc
    });
    Ok(ConeAnalysis {
        ell,
        n,
        period: 2.0 * PI / sqrt_disc,
        phase_angle: PI * ell as f64 / sqrt_disc + PI,
        root_of_unity: is_perfect_square((ell * ell + 4 * n) as u64),
        uniform_mixing_time,
        return_bound: (ell * ell) as f64 / disc,
    })
}

/// Build the cone over `y`, evaluate U at the closed-form uniform mixing
/// time and return the largest deviation of the apex-column probabilities
/// from 1/(n+1).
pub fn verify_apex_uniform_mixing(y: &Graph, tol: f64) -> Result<f64> {
    let ell = regularity(y).ok_or_else(|| {
        Error::PreconditionViolation("uniform mixing base must be regular".into())
    })?;
    if ell > 2 {
        return Err(Error::PreconditionViolation(format!(
            "apex uniform mixing requires valency <= 2, base has valency {ell}"
        )));
    }
    let n = y.n();
    let analysis = cone_analysis(ell, n)?;
    let t_star = analysis
        .uniform_mixing_time
        .expect("valency <= 2 guarantees a mixing time");
    let z = cone(y)?;
    let d = decompose(&z, DEFAULT_GROUPING_TOL)?;
    let u = transition_matrix(&d, t_star);
    let target = 1.0 / (n as f64 + 1.0);
    let mut deviation: f64 = 0.0;
    for v in 0..=n {
        deviation = deviation.max((u.matrix[(v, 0)].norm_sqr() - target).abs());
    }
    if deviation > tol {
        return Err(Error::InvariantViolation(format!(
            "apex mixing deviation {deviation:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    Ok(deviation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, disjoint_copies, empty, petersen};
    use approx::assert_abs_diff_eq;

    #[test]
    fn star_cone_analysis() {
        let a = cone_analysis(0, 3).unwrap();
        assert_abs_diff_eq!(a.period, 2.0 * PI / 12f64.sqrt(), epsilon = 1e-12);
        // cos(theta) = 1 - 12/8 = -1/2, t* = (2 pi / 3) / (2 sqrt 3)
        let t = a.uniform_mixing_time.unwrap();
        assert_abs_diff_eq!(t, (2.0 * PI / 3.0) / (2.0 * 3f64.sqrt()), epsilon = 1e-12);
        assert!(!a.root_of_unity); // 12 is not a square
        assert_abs_diff_eq!(a.return_bound, 0.0);
    }

    #[test]
    fn cone_over_c4_phase() {
        let a = cone_analysis(2, 4).unwrap();
        assert_abs_diff_eq!(a.period, 2.0 * PI / 20f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            a.phase_angle,
            PI * (1.0 + 1.0 / 5f64.sqrt()),
            epsilon = 1e-12
        );
        assert!(!a.root_of_unity); // 20 is not a square
        assert_abs_diff_eq!(a.uniform_mixing_time.unwrap(), PI / 20f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn cone_over_petersen_has_no_mixing_time() {
        let a = cone_analysis(3, 10).unwrap();
        assert!(a.uniform_mixing_time.is_none());
        assert_abs_diff_eq!(a.return_bound, 9.0 / 49.0, epsilon = 1e-12);
    }

    #[test]
    fn perfect_square_detection() {
        // l = 3, n = 4: 9 + 16 = 25
        let a = cone_analysis(3, 4).unwrap();
        assert!(a.root_of_unity);
        assert!(!cone_analysis(2, 4).unwrap().root_of_unity);
    }

    #[test]
    fn invalid_parameters() {
        assert!(cone_analysis(4, 3).is_err());
        assert!(cone_analysis(3, 5).is_err()); // odd handshake
        assert!(cone_analysis(0, 0).is_err());
    }

    #[test]
    fn apex_mixing_verified_numerically() {
        for base in [
            empty(3).unwrap(),
            disjoint_copies(2, 2).unwrap(),
            cycle(4).unwrap(),
            cycle(5).unwrap(),
        ] {
            let dev = verify_apex_uniform_mixing(&base, 1e-9).unwrap();
            assert!(dev < 1e-9, "deviation {dev}");
        }
        assert!(verify_apex_uniform_mixing(&petersen(), 1e-9).is_err());
    }
}
