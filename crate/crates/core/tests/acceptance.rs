//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ctqw_core::families::{conference_diagonal, oa_stayhome_check, Verdict};
use ctqw_core::graph::{
    complete, cone, cycle, disjoint_copies, empty, join, oa_cyclic, oa_graph, petersen,
    random_regular, regularity,
};
use ctqw_core::spectral::{
    decompose, ratio_condition, srg_idempotents, srg_recognize, RatioOutcome, SrgRecognition,
    DEFAULT_GROUPING_TOL,
};
use ctqw_core::walk::{
    abs_entry_bound, average_mixing, complement_residual, cone_analysis, join_ab_residual,
    join_apex_entry, mixing_matrix, psd_sandwich, pst_detect, transition_matrix,
    verify_apex_uniform_mixing,
};
use ctqw_core::{Graph, SpectralDecomposition, SrgParams, TimeGrid};

macro_rules! check {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn report(number: usize, name: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("criterion {number} ({name}): pass"),
        Err(msg) => {
            println!("criterion {number} ({name}): FAIL - {msg}");
            panic!("criterion {number} ({name}) failed: {msg}");
        }
    }
}

fn dec(g: &Graph) -> SpectralDecomposition {
    decompose(g, DEFAULT_GROUPING_TOL).unwrap()
}

fn phase_dist(observed: num_complex::Complex64, expected: num_complex::Complex64) -> f64 {
    (observed - expected).norm()
}

#[test]
fn criterion_01_complete_graph_stay_at_home() {
    report(1, "K_n diagonal/off-diagonal bounds", || {
        let started = std::time::Instant::now();
        for n in [10usize, 100] {
            let d = dec(&complete(n).unwrap());
            let grid = TimeGrid::new(0.0, 2.0 * PI, 512).unwrap();
            let bound = 2.0 / n as f64;
            for t in grid.values() {
                let u = transition_matrix(&d, t).matrix;
                for i in 0..n {
                    check!(
                        u[(i, i)].norm() >= 1.0 - bound - 1e-9,
                        "K_{n} diagonal {} at t={t}",
                        u[(i, i)].norm()
                    );
                    for j in 0..n {
                        if i != j {
                            check!(
                                u[(i, j)].norm() <= bound + 1e-9,
                                "K_{n} off-diagonal {} at t={t}",
                                u[(i, j)].norm()
                            );
                        }
                    }
                }
            }
        }
        check!(
            started.elapsed().as_secs_f64() < 10.0,
            "runtime {:?} exceeds 10 s",
            started.elapsed()
        );
        Ok(())
    });
}

#[test]
fn criterion_02_complement_lemma() {
    report(2, "complement walk residual", || {
        let grid = TimeGrid::new(0.0, 2.0 * PI, 256).unwrap();
        let p = petersen();
        let r = complement_residual(&p, &grid).map_err(|e| e.to_string())?;
        check!(r <= 2.0 / 10.0 + 1e-9, "Petersen residual {r}");

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let g = random_regular(12, 4, &mut rng).map_err(|e| e.to_string())?;
        check!(regularity(&g) == Some(4), "sample is not 4-regular");
        let r = complement_residual(&g, &grid).map_err(|e| e.to_string())?;
        check!(r <= 2.0 / 12.0 + 1e-9, "random 4-regular residual {r}");
        Ok(())
    });
}

#[test]
fn criterion_03_join_closed_forms() {
    report(3, "join spectra and entries", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let grid = TimeGrid::new(0.0, 2.0 * PI, 64).unwrap();
        let sample = |rng: &mut ChaCha8Rng| loop {
            use rand::Rng;
            let s = rng.gen_range(2..=6);
            let k = rng.gen_range(0..s);
            if s * k % 2 != 0 {
                continue;
            }
            if let Ok(g) = random_regular(s, k, rng) {
                return (g, s, k);
            }
        };
        for trial in 0..20 {
            let (x, m, k) = sample(&mut rng);
            let (y, n, ell) = sample(&mut rng);
            let data = ctqw_core::spectral::join_decomposition(&x, &y, 1e-9)
                .map_err(|e| format!("trial {trial}: {e}"))?;
            check!(
                data.reconstruction_residual <= 1e-9,
                "trial {trial}: reconstruction residual {}",
                data.reconstruction_residual
            );

            let z = join(&x, &y);
            let dz = dec(&z);
            let dx = dec(&x);
            let dy = dec(&y);
            for t in grid.values() {
                let u = transition_matrix(&dz, t).matrix;
                let ux = transition_matrix(&dx, t).matrix;
                let uy = transition_matrix(&dy, t).matrix;
                let cross = join_apex_entry(k, ell, m, n, t);
                let rx = join_ab_residual(k, ell, m, n, t);
                let ry = join_ab_residual(ell, k, n, m, t);
                for a in 0..m + n {
                    for b in 0..m + n {
                        let expected = match (a < m, b < m) {
                            (true, true) => ux[(a, b)] + rx,
                            (false, false) => uy[(a - m, b - m)] + ry,
                            _ => cross,
                        };
                        check!(
                            (u[(a, b)] - expected).norm() <= 1e-9,
                            "trial {trial}: entry ({a},{b}) off by {} at t={t} (m={m},k={k},n={n},l={ell})",
                            (u[(a, b)] - expected).norm()
                        );
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_cone_periodicity_phase() {
    report(4, "cone over C4 period and phase", || {
        let g = cone(&cycle(4).unwrap()).unwrap();
        let d = dec(&g);
        let t = 2.0 * PI / 20f64.sqrt();
        let apex = transition_matrix(&d, t).matrix[(0, 0)];
        check!(apex.norm() >= 1.0 - 1e-9, "apex return modulus {}", apex.norm());
        let expected_arg = PI * (1.0 + 1.0 / 5f64.sqrt());
        let expected = num_complex::Complex64::from_polar(1.0, expected_arg);
        let observed = apex / apex.norm();
        check!(
            phase_dist(observed, expected) <= 1e-8,
            "phase {} vs expected arg {expected_arg}",
            apex.arg()
        );
        let analysis = cone_analysis(2, 4).map_err(|e| e.to_string())?;
        check!(!analysis.root_of_unity, "20 flagged as a perfect square");
        check!(
            (analysis.phase_angle - expected_arg).abs() <= 1e-12,
            "closed-form phase angle {}",
            analysis.phase_angle
        );
        Ok(())
    });
}

#[test]
fn criterion_05_local_uniform_mixing() {
    report(5, "apex uniform mixing", || {
        let bases = [
            empty(3).unwrap(),
            disjoint_copies(2, 2).unwrap(),
            cycle(4).unwrap(),
            cycle(5).unwrap(),
        ];
        for y in &bases {
            let deviation = verify_apex_uniform_mixing(y, 1e-9).map_err(|e| e.to_string())?;
            check!(
                deviation <= 1e-9,
                "deviation {deviation} on a base with {} vertices",
                y.n()
            );
        }

        // valency 3 base: no uniform mixing time, but the return bound holds
        let analysis = cone_analysis(3, 10).map_err(|e| e.to_string())?;
        check!(
            analysis.uniform_mixing_time.is_none(),
            "uniform mixing reported for valency 3"
        );
        let g = cone(&petersen()).unwrap();
        let d = dec(&g);
        let grid = TimeGrid::new(0.0, 2.0 * PI, 512).unwrap();
        for t in grid.values() {
            let m = mixing_matrix(&d, t).matrix[(0, 0)];
            check!(
                m >= 9.0 / 49.0 - 1e-9,
                "apex probability {m} below 9/49 at t={t}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_06_average_mixing_sandwich() {
    report(6, "average mixing and PSD sandwich", || {
        // K3 equality case at t = pi/3
        let d3 = dec(&complete(3).unwrap());
        let m = mixing_matrix(&d3, PI / 3.0).matrix;
        let target = average_mixing(&d3).matrix * 2.0 - DMatrix::identity(3, 3);
        let worst = (&m - &target).iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        check!(worst <= 1e-9, "K3 equality residual {worst}");

        let dp = dec(&petersen());
        for t in TimeGrid::new(0.0, 2.0 * PI, 100).unwrap().values() {
            let (lower, upper) = psd_sandwich(&dp, t, 1e-9).map_err(|e| e.to_string())?;
            check!(
                lower >= -1e-9 && upper >= -1e-9,
                "sandwich margins ({lower}, {upper}) at t={t}"
            );
        }

        // trapezoid time average over [0, 200 pi] against the closed form
        for g in [complete(5).unwrap(), petersen()] {
            let d = dec(&g);
            let mhat = average_mixing(&d).matrix;
            let grid = TimeGrid::new(0.0, 200.0 * PI, 20_001).unwrap();
            let h = grid.step();
            let n = g.n();
            let mut acc = DMatrix::zeros(n, n);
            let values = grid.values();
            for (idx, &t) in values.iter().enumerate() {
                let w = if idx == 0 || idx == values.len() - 1 { 0.5 } else { 1.0 };
                acc += mixing_matrix(&d, t).matrix * (w * h);
            }
            acc /= 200.0 * PI;
            let worst = (&acc - &mhat).iter().fold(0.0f64, |a, x| a.max(x.abs()));
            check!(worst <= 1e-2, "time average off by {worst} on {n} vertices");
        }
        Ok(())
    });
}

#[test]
fn criterion_07_abs_bound_and_ratio_condition() {
    report(7, "entry bounds and eigenvalue ratios", || {
        let d = dec(&petersen());
        for t in TimeGrid::new(0.0, 2.0 * PI, 256).unwrap().values() {
            let u = transition_matrix(&d, t).matrix;
            for a in 0..10 {
                for b in 0..10 {
                    let bound = abs_entry_bound(&d, a, b);
                    check!(
                        u[(a, b)].norm() <= bound + 1e-9,
                        "|U({t})_{{{a},{b}}}| = {} above {bound}",
                        u[(a, b)].norm()
                    );
                }
            }
        }

        match ratio_condition(&[3.0, 1.0, -2.0], 1e-6).map_err(|e| e.to_string())? {
            RatioOutcome::Holds => {}
            other => check!(false, "integer support judged {other:?}"),
        }
        let s5 = 5f64.sqrt();
        let support = [2.0, (-1.0 + s5) / 2.0, (-1.0 - s5) / 2.0];
        match ratio_condition(&support, 1e-6).map_err(|e| e.to_string())? {
            RatioOutcome::Fails(w) => {
                check!(
                    (w.theta_r - w.theta_s).abs() > 0.0 && w.ratio.is_finite(),
                    "degenerate witness {w:?}"
                );
            }
            other => check!(false, "C5 support judged {other:?}"),
        }
        Ok(())
    });
}

#[test]
fn criterion_08_srg_machinery() {
    report(8, "SRG recognition and idempotents", || {
        let rook = oa_graph(&oa_cyclic(2, 3).unwrap()).unwrap();
        let SrgRecognition::Srg(p) = srg_recognize(&rook) else {
            return Err("rook graph not recognized".into());
        };
        check!(
            (p.n, p.k, p.a, p.c) == (9, 4, 1, 2),
            "rook parameters ({}, {}, {}, {})",
            p.n,
            p.k,
            p.a,
            p.c
        );
        let latin = oa_graph(&oa_cyclic(3, 3).unwrap()).unwrap();
        let SrgRecognition::Srg(q) = srg_recognize(&latin) else {
            return Err("OA(3,3) graph not recognized".into());
        };
        check!(
            (q.n, q.k, q.a, q.c) == (9, 6, 3, 6),
            "OA(3,3) parameters ({}, {}, {}, {})",
            q.n,
            q.k,
            q.a,
            q.c
        );

        for (g, p) in [(rook, p), (latin, q), (petersen(), srg_of(&petersen()))] {
            let closed = srg_idempotents(&p, &g).map_err(|e| e.to_string())?;
            let numeric = dec(&g);
            check!(
                closed.len() == numeric.len(),
                "term count {} vs {}",
                closed.len(),
                numeric.len()
            );
            for (e_closed, e_num) in closed.idempotents().iter().zip(numeric.idempotents()) {
                let worst = (e_closed - e_num).iter().fold(0.0f64, |a, x| a.max(x.abs()));
                check!(worst <= 1e-9, "idempotent residual {worst} on ({}, {})", p.n, p.k);
            }
            // multiplicity identity
            let lhs = (p.theta - p.tau).powi(2);
            let rhs = p.n as f64 * (p.k * p.ell()) as f64 / (p.m_theta * p.m_tau) as f64;
            check!(
                (lhs - rhs).abs() <= 1e-9,
                "multiplicity identity off by {}",
                (lhs - rhs).abs()
            );
        }
        Ok(())
    });
}

fn srg_of(g: &Graph) -> SrgParams {
    match srg_recognize(g) {
        SrgRecognition::Srg(p) => p,
        SrgRecognition::NotSrg { reason } => panic!("not an SRG: {reason}"),
    }
}

#[test]
fn criterion_09_family_diagnostics() {
    report(9, "stay-at-home family diagnostics", || {
        let diag = oa_stayhome_check(2, 16).map_err(|e| e.to_string())?;
        check!(
            (diag.diag_lower_bound - 0.57244873046875).abs() <= 1e-6,
            "OA(2,16) diagonal lower bound {}",
            diag.diag_lower_bound
        );
        check!(
            diag.verdict == Verdict::StayAtHome,
            "OA(2,16) verdict {:?}",
            diag.verdict
        );

        let c5 = conference_diagonal(5).map_err(|e| e.to_string())?;
        check!(c5 == 0.36, "conference diagonal {c5}");

        // gamma = 1/2 scaling: k = n/2 puts the diagonal near 1/2
        let half = oa_stayhome_check(8, 16).map_err(|e| e.to_string())?;
        check!(
            (half.avg_diag - 0.5).abs() <= 1e-2,
            "OA(8,16) average diagonal {}",
            half.avg_diag
        );
        Ok(())
    });
}

#[test]
fn criterion_10_pst_regression() {
    report(10, "perfect state transfer", || {
        let scan = TimeGrid::new(0.0, PI, 400).unwrap();

        let d4 = dec(&cycle(4).unwrap());
        let hit = pst_detect(&d4, 0, 2, &scan, 1e-6).map_err(|e| e.to_string())?;
        check!(hit.found, "no C4 transfer found");
        let t = hit.time.unwrap();
        check!((t - PI / 2.0).abs() <= 1e-6, "C4 transfer time {t}");
        let phase = hit.phase.unwrap();
        let z = num_complex::Complex64::from_polar(phase.modulus, phase.argument);
        check!(
            phase_dist(z, num_complex::Complex64::new(-1.0, 0.0)) <= 1e-8,
            "C4 phase {z}"
        );

        let d2 = dec(&complete(2).unwrap());
        let hit = pst_detect(&d2, 0, 1, &scan, 1e-6).map_err(|e| e.to_string())?;
        check!(hit.found, "no K2 transfer found");
        let t = hit.time.unwrap();
        check!((t - PI / 2.0).abs() <= 1e-6, "K2 transfer time {t}");
        let phase = hit.phase.unwrap();
        let z = num_complex::Complex64::from_polar(phase.modulus, phase.argument);
        check!(
            phase_dist(z, num_complex::Complex64::new(0.0, 1.0)) <= 1e-8,
            "K2 phase {z}"
        );

        let dp = dec(&petersen());
        let long = TimeGrid::new(0.0, 20.0, 2000).unwrap();
        for a in 0..10 {
            for b in (a + 1)..10 {
                let hit = pst_detect(&dp, a, b, &long, 1e-6).map_err(|e| e.to_string())?;
                check!(
                    !hit.found,
                    "spurious Petersen transfer {a} -> {b} at {:?}",
                    hit.time
                );
            }
        }
        Ok(())
    });
}
