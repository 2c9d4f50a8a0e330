use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::numerics::{derive2, quad};
use crate::separation::{angular_coefficients, Equation, ModeIndex, PotentialSpec};
use crate::Background;

fn spec(bg: Background, m: f64, w: f64, eq: Equation) -> PotentialSpec {
    PotentialSpec::new(bg, ModeIndex::new(&bg, m, w, 0.0), eq)
}

fn schw() -> Background {
    Background::kerr(1.0, 0.0).unwrap()
}

fn bolt() -> Background {
    Background::taub_bolt(1.0).unwrap()
}

fn lambdas(s: &PotentialSpec, k: usize) -> Vec<f64> {
    angular_spectrum(s, &AngularSolverConfig::default().with_count(k))
        .unwrap()
        .iter()
        .map(|p| p.lambda)
        .collect()
}

/// Pointwise `𝐒S` with hyper-dual derivatives of the returned eigenfunction.
fn pointwise_residual(s: &PotentialSpec, pair: &AngularEigenpair, theta: f64) -> f64 {
    let (s0, s1, s2) = derive2(|t| pair.eval_theta(t), theta).unwrap();
    let co = angular_coefficients(&PotentialSpec::new(
        s.background,
        s.mode.with_lambda(pair.lambda),
        s.equation,
    ));
    let (st, ct) = theta.sin_cos();
    s2 + s1 * ct / st + co.v_at(ct) * s0
}

#[test]
fn kerr_static_spectrum() {
    for a in [0.0, 0.5, -0.9] {
        let l = lambdas(
            &spec(Background::kerr(1.0, a).unwrap(), 0.0, 0.0, Equation::Plain),
            3,
        );
        for (x, want) in l.iter().zip([2.0, 8.0, 16.0]) {
            assert!((x - want).abs() < 1e-10, "{a} {l:?}");
        }
    }
}

#[test]
fn legendre_spectrum() {
    let l = lambdas(&spec(bolt(), 0.0, -2.0, Equation::Plain), 4);
    for (x, want) in l.iter().zip([0.0, 2.0, 6.0, 12.0]) {
        assert!((x - want).abs() < 1e-8, "{l:?}");
    }
    let pair = &angular_spectrum(
        &spec(bolt(), 0.0, -2.0, Equation::Plain),
        &AngularSolverConfig::default(),
    )
    .unwrap()[0];
    for th in [0.1, 1.0, 2.5] {
        assert!((angular_eigenfunction(pair, th).unwrap() - 0.5f64.sqrt()).abs() < 1e-8);
    }
    assert!(angular_eigenfunction(pair, 0.0).is_err());
    assert!(angular_eigenfunction(pair, 3.5).is_err());
}

#[test]
fn kerr_static_nonnegative_and_spin_independent() {
    for m in -3i32..=3 {
        let l0 = lambdas(&spec(schw(), m as f64, 0.0, Equation::Plain), 4);
        let l1 = lambdas(
            &spec(
                Background::kerr(1.0, 0.7).unwrap(),
                m as f64,
                0.0,
                Equation::Plain,
            ),
            4,
        );
        for (x, y) in l0.iter().zip(&l1) {
            assert!(*x >= 0.0 && (x - y).abs() < 1e-8);
        }
        // Spin-weight-2 harmonics: Λ = l(l+1) − 4 with l ≥ max(2, |m|).
        let lmin = 2.max(m.abs()) as f64;
        for (j, x) in l0.iter().enumerate() {
            let l = lmin + j as f64;
            assert!((x - (l * (l + 1.0) - 4.0)).abs() < 1e-9, "m={m} {l0:?}");
        }
    }
}

#[test]
fn eigenfunctions_orthonormal_and_solve() {
    let cases = [
        spec(
            Background::kerr(1.0, 0.5).unwrap(),
            1.0,
            0.7,
            Equation::Plain,
        ),
        spec(
            Background::kerr(1.0, 0.5).unwrap(),
            -2.0,
            1.3,
            Equation::Tilded,
        ),
        spec(bolt(), 0.5, 1.5, Equation::Plain),
        spec(bolt(), -1.0, 2.0, Equation::Tilded),
    ];
    for s in cases {
        let pairs = angular_spectrum(&s, &AngularSolverConfig::default().with_count(4)).unwrap();
        for w in pairs.windows(2) {
            assert!(w[1].lambda > w[0].lambda);
        }
        for p in &pairs {
            for q in &pairs {
                let g = quad(
                    |t: f64| p.eval_theta(t) * q.eval_theta(t) * t.sin(),
                    0.0,
                    PI,
                    1e-12,
                )
                .unwrap();
                let want = if p.index == q.index { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-8, "{s:?} {} {} {g}", p.index, q.index);
            }
            for th in [0.2, 0.9, 1.6, 2.4, 3.0] {
                let r = pointwise_residual(&s, p, th);
                assert!(r.abs() < 1e-8 * (1.0 + p.lambda), "{s:?} {} {r}", p.index);
            }
        }
    }
}

#[test]
fn neumann_holds_for_smooth_static_modes() {
    for m in [0.0, 2.0, -2.0] {
        let pairs = angular_spectrum(
            &spec(schw(), m, 0.0, Equation::Plain),
            &AngularSolverConfig::default(),
        )
        .unwrap();
        for p in &pairs {
            let d = |t: f64| derive2(|x| p.eval_theta(x), t).unwrap().1;
            for (near, far) in [
                (0.001, 0.01),
                (0.01, 0.1),
                (PI - 0.001, PI - 0.01),
                (PI - 0.01, PI - 0.1),
            ] {
                assert!(
                    d(near).abs() < 0.2 * d(far).abs() + 1e-12,
                    "m={m} {}",
                    p.index
                );
            }
        }
    }
}

#[test]
fn fd_oracle_legendre_and_order() {
    let leg = fd_oracle_spectrum(&spec(bolt(), 0.0, -2.0, Equation::Plain), 3, 2000).unwrap();
    assert!(leg[0].abs() < 1e-10);
    let s = spec(schw(), 0.0, 0.0, Equation::Plain);
    let e1: Vec<f64> = fd_oracle_spectrum(&s, 3, 500)
        .unwrap()
        .iter()
        .zip([2.0, 8.0, 16.0])
        .map(|(a, b)| a - b)
        .collect();
    let e2: Vec<f64> = fd_oracle_spectrum(&s, 3, 1000)
        .unwrap()
        .iter()
        .zip([2.0, 8.0, 16.0])
        .map(|(a, b)| a - b)
        .collect();
    for (a, b) in e1.iter().zip(&e2) {
        let ratio = a / b;
        assert!((ratio - 4.0).abs() < 0.8, "{ratio}");
    }
    assert!(fd_oracle_spectrum(&s, 3, 100).is_err());
}

#[test]
fn fd_oracle_agrees_with_galerkin() {
    // Integer pole exponents, where the oracle converges at second order.
    let cases = [
        spec(schw(), 0.0, 0.0, Equation::Plain),
        spec(
            Background::kerr(1.0, 0.5).unwrap(),
            0.0,
            0.7,
            Equation::Plain,
        ),
        spec(
            Background::kerr(1.0, 0.5).unwrap(),
            2.0,
            -1.1,
            Equation::Tilded,
        ),
        spec(bolt(), 0.0, 0.0, Equation::Plain),
        spec(bolt(), 1.0, 1.0, Equation::Plain),
    ];
    let n = 1000;
    for s in cases {
        let g = lambdas(&s, 3);
        let f = fd_oracle_spectrum(&s, 3, n).unwrap();
        let x = fd_oracle_extrapolated(&s, 3, n).unwrap();
        for j in 0..3 {
            let tol = 10.0 / (n * n) as f64 * (1.0 + g[j].abs());
            assert!((g[j] - f[j]).abs() < tol.max(1e-6), "{s:?} {g:?} {f:?}");
            assert!(
                (g[j] - x[j]).abs() < 1e-6 * (1.0 + g[j].abs()),
                "{s:?} {g:?} {x:?}"
            );
        }
    }
}

#[test]
fn config_validation() {
    let s = spec(schw(), 0.0, 0.0, Equation::Plain);
    let bad = AngularSolverConfig {
        grid: 7,
        order: 40,
        count: 2,
        tolerance: 1e-9,
    };
    assert!(angular_spectrum(&s, &bad).is_err());
    let bad = AngularSolverConfig {
        count: 0,
        ..AngularSolverConfig::default()
    };
    assert!(angular_spectrum(&s, &bad).is_err());
}

#[test]
fn sampled_grid_matches_evaluation() {
    let s = spec(bolt(), 0.5, -0.5, Equation::Tilded);
    let cfg = AngularSolverConfig::default().with_count(2);
    for p in angular_spectrum(&s, &cfg).unwrap() {
        assert_eq!(p.theta.len(), cfg.grid);
        for (t, v) in p.theta.iter().zip(&p.s) {
            assert_eq!(*v, p.eval_theta(*t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bolt_reflection_symmetry(m2 in -4i32..=4, n in -3i32..=3) {
        let m = m2 as f64 * 0.5;
        let w = m + n as f64;
        let a = lambdas(&spec(bolt(), m, w, Equation::Plain), 4);
        let b = lambdas(&spec(bolt(), -m, w, Equation::Plain), 4);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-8 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn kerr_reflection_symmetry(m in -3i32..=3, w in -2.0f64..2.0, a in 0.0f64..0.9) {
        let p = lambdas(&spec(Background::kerr(1.0, a).unwrap(), m as f64, w, Equation::Plain), 4);
        let q = lambdas(&spec(Background::kerr(1.0, -a).unwrap(), -(m as f64), w, Equation::Plain), 4);
        let t = lambdas(&spec(Background::kerr(1.0, a).unwrap(), m as f64, w, Equation::Tilded), 4);
        for j in 0..4 {
            prop_assert!((p[j] - q[j]).abs() < 1e-8 * (1.0 + p[j].abs()));
            prop_assert!((p[j] - t[j]).abs() < 1e-8 * (1.0 + p[j].abs()));
            if j > 0 {
                prop_assert!(p[j] > p[j - 1]);
            }
        }
    }
}
