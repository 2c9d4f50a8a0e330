use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex;
use proptest::prelude::*;

use super::*;
use crate::geometry::{random_points, Background, ChartPoint};
use crate::numerics::HyperDual;
use crate::Real;

type HD = HyperDual<f64>;

fn schw() -> Background {
    Background::kerr(1.0, 0.0).unwrap()
}

fn kerr() -> Background {
    Background::kerr(1.0, 0.5).unwrap()
}

fn bolt() -> Background {
    Background::taub_bolt(1.0).unwrap()
}

fn spec(bg: Background, m: f64, w: f64, l: f64, eq: Equation) -> PotentialSpec {
    PotentialSpec::new(bg, ModeIndex::new(&bg, m, w, l), eq)
}

#[test]
fn kerr_lattice_a0() {
    let modes = mode_lattice(
        &schw(),
        &[-1.0, 0.0, 1.0],
        -2..=2,
        LatticeConvention::Invariance,
    );
    assert_eq!(modes.len(), 15);
    for (k, md) in modes.iter().enumerate() {
        assert_eq!(md.omega, [-0.5, -0.25, 0.0, 0.25, 0.5][k % 5]);
    }
    let paper = mode_lattice(&schw(), &[-1.0, 0.0, 1.0], -2..=2, LatticeConvention::Paper);
    assert_eq!(modes, paper);
}

#[test]
fn kerr_lattice_conventions_differ_for_spin() {
    let bg = kerr();
    let inv = mode_lattice(&bg, &[0.0, 2.0], 1..=1, LatticeConvention::Invariance);
    let pap = mode_lattice(&bg, &[0.0, 2.0], 1..=1, LatticeConvention::Paper);
    assert_relative_eq!(inv[0].omega, bg.kappa(), max_relative = 1e-15);
    assert_relative_eq!(
        pap[0].omega,
        bg.omega_h() + bg.kappa(),
        max_relative = 1e-15
    );
    assert!(!lattice_check(&bg, 2.0, pap[1].omega, LatticeConvention::Invariance).accepted);
    // m = −1 is where the two agree.
    let w = bg.omega_h() + 3.0 * bg.kappa();
    assert!(lattice_check(&bg, -1.0, w, LatticeConvention::Invariance).accepted);
    assert!(!lattice_check(&bg, 0.5, 0.0, LatticeConvention::Invariance).accepted);
}

#[test]
fn bolt_lattice() {
    let bg = bolt();
    assert!(lattice_check(&bg, 0.5, 1.5, LatticeConvention::Invariance).accepted);
    assert!(!lattice_check(&bg, 0.5, 1.0, LatticeConvention::Invariance).accepted);
    assert!(!lattice_check(&bg, 0.25, 0.25, LatticeConvention::Invariance).accepted);
    for b in [bolt(), schw(), kerr()] {
        assert!(lattice_check(&b, 0.0, 0.0, LatticeConvention::Invariance).accepted);
    }
    let modes = mode_lattice(
        &bg,
        &[-1.0, -0.5, 0.0, 0.3, 0.5, 1.0],
        -2..=2,
        LatticeConvention::Invariance,
    );
    assert_eq!(modes.len(), 25);
    assert!(modes.iter().all(|md| md.omega - md.m == md.n as f64));
}

#[test]
fn lattice_matches_phase_invariance() {
    // e^{i(mφ − ωt)} must be unchanged under both generators.
    for bg in [schw(), kerr(), bolt()] {
        let gens = crate::geometry::identification_lattice(&bg).generators;
        let ms: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.5).collect();
        for md in mode_lattice(&bg, &ms, -3..=3, LatticeConvention::Invariance) {
            for [dt, dphi] in gens {
                let ph = md.m * dphi - md.omega * dt;
                let k = (ph / (2.0 * PI)).round();
                assert!((ph - 2.0 * PI * k).abs() < 1e-9, "{bg:?} {md:?}");
            }
        }
    }
}

#[test]
fn potential_examples() {
    let u = potential_u(&spec(schw(), 0.0, 0.25, 2.0, Equation::Plain), 3.0).unwrap();
    assert_relative_eq!(u, -9.0 - 1.0 / 48.0, max_relative = 1e-14);
    let u = potential_u(&spec(bolt(), 0.0, 1.0, 0.0, Equation::Plain), 3.0).unwrap();
    assert_relative_eq!(u, -16.1, max_relative = 1e-14);
    let ut = potential_u(&spec(bolt(), 0.0, 1.0, 0.0, Equation::Tilded), 3.0).unwrap();
    assert_relative_eq!(ut, -14.5, max_relative = 1e-14);
    assert!(potential_u(&spec(schw(), 0.0, 0.25, 2.0, Equation::Plain), 2.0).is_err());
    assert!(potential_u(&spec(bolt(), 0.0, 1.0, 0.0, Equation::Plain), 0.5).is_err());
}

#[test]
fn potential_v_examples() {
    let s = spec(schw(), 0.0, 0.0, 2.0, Equation::Plain);
    assert_eq!(potential_v(&s, 0.0).unwrap(), 2.0);
    let s = spec(schw(), 2.0, 0.0, 2.0, Equation::Plain);
    assert_eq!(potential_v(&s, 1.0).unwrap(), 2.0);
    assert!(potential_v(&s, -1.0).is_err());
    assert!((potential_v(&s, 1.0 - 1e-9).unwrap() - 2.0).abs() < 1e-8);
    let s = spec(bolt(), 0.0, -2.0, 1.7, Equation::Plain);
    for x in [-1.0, -0.3, 0.0, 0.9, 1.0] {
        assert_eq!(potential_v(&s, x).unwrap(), 1.7);
    }
    assert!(potential_v(&s, 1.5).is_err());
}

#[test]
fn kerr_tilded_is_reflection() {
    let bg = kerr();
    for x in [-0.7, 0.1, 0.55] {
        let v = potential_v(&spec(bg, 1.0, 0.3, 2.5, Equation::Plain), x).unwrap();
        let vt = potential_v(&spec(bg, 1.0, 0.3, 2.5, Equation::Tilded), -x).unwrap();
        assert_relative_eq!(v, vt, max_relative = 1e-14);
    }
    let u = potential_u(&spec(bg, 1.0, 0.3, 2.5, Equation::Plain), 4.0).unwrap();
    let ut = potential_u(&spec(bg, 1.0, 0.3, 2.5, Equation::Tilded), 4.0).unwrap();
    assert_eq!(u, ut);
}

#[test]
fn delta_u_regular_at_roots() {
    for (bg, eq) in [
        (kerr(), Equation::Plain),
        (bolt(), Equation::Plain),
        (bolt(), Equation::Tilded),
    ] {
        for r0 in [bg.r_plus(), bg.r_minus()] {
            let w: f64 = delta_u(&bg, eq, 0.5, 1.5, 2.0, r0);
            assert!(w.is_finite() && w < 0.0, "{bg:?} {r0}");
        }
        let r = 5.3;
        let u = potential_u(&spec(bg, 0.5, 1.5, 2.0, eq), r).unwrap();
        assert_relative_eq!(
            delta_u(&bg, eq, 0.5, 1.5, 2.0, r) / bg.delta(r),
            u,
            max_relative = 1e-14
        );
    }
}

#[test]
fn uv_decomposition_examples() {
    let bg = kerr();
    let w = bg.omega_h() + bg.kappa();
    let d = uv_decomposition_residual(&bg, &ModeIndex::new(&bg, 0.0, w, 2.0), 3.0, 0.0).unwrap();
    assert!(d.residual < 1e-10 * (1.0 + d.total.abs()));
    assert_relative_eq!(d.terms[0], -16.0 / 3.0, max_relative = 1e-14);
    let b = schw();
    let d = uv_decomposition_residual(&b, &ModeIndex::new(&b, 0.0, 0.25, 2.0), 3.0, 0.0).unwrap();
    assert_relative_eq!(d.total, -7.0 - 1.0 / 48.0, max_relative = 1e-14);
    assert!(
        uv_decomposition_residual(&bolt(), &ModeIndex::new(&bolt(), 0.0, 1.0, 0.0), 3.0, 0.0)
            .is_err()
    );
}

fn r_test(r: HD) -> HD {
    r.recip()
}

fn s_test(t: HD) -> HD {
    t.sin()
}

#[test]
fn separation_identity_examples() {
    let bg = kerr();
    let w = bg.omega_h() + bg.kappa();
    let mode = ModeIndex::new(&bg, 1.0, w, 3.0);
    for eq in [Equation::Plain, Equation::Tilded] {
        for p in random_points(&bg, 10, 21) {
            let c = separation_consistency(&bg, eq, &mode, &r_test, &s_test, &p).unwrap();
            assert!(c.residual < 1e-9 * (1.0 + c.l_phi), "{p:?} {c:?}");
        }
    }
}

#[test]
fn constant_field_gives_u_plus_v() {
    for (bg, eq) in [
        (kerr(), Equation::Plain),
        (kerr(), Equation::Tilded),
        (bolt(), Equation::Plain),
        (bolt(), Equation::Tilded),
    ] {
        let p = ChartPoint::new(0.4, bg.r_plus() + 1.7, 1.2, 0.3);
        let l = apply_l(
            &bg,
            eq,
            |_| Complex::new(HD::constant(1.0), HD::constant(0.0)),
            &p,
        )
        .unwrap();
        let s = spec(bg, 0.0, 0.0, 0.0, eq);
        let want = potential_u(&s, p.r).unwrap() + potential_v(&s, p.theta.cos()).unwrap();
        assert!(
            (l.re - want).abs() < 1e-12 * (1.0 + want.abs()) && l.im.abs() < 1e-12,
            "{bg:?} {eq:?} {l} {want}"
        );
    }
}

#[test]
fn lambda_cancels() {
    let bg = bolt();
    let p = ChartPoint::new(0.2, 3.4, 0.7, 1.1);
    let base = ModeIndex::new(&bg, 0.5, 1.5, 0.0);
    let a = separation_consistency(&bg, Equation::Tilded, &base, &r_test, &s_test, &p).unwrap();
    let b = separation_consistency(
        &bg,
        Equation::Tilded,
        &base.with_lambda(37.0),
        &r_test,
        &s_test,
        &p,
    )
    .unwrap();
    assert!((a.residual - b.residual).abs() < 1e-12);
    assert_relative_eq!(a.radial - b.radial, 37.0 / p.r, max_relative = 1e-12);
}

#[test]
fn np_teukolsky_operator_matches_l() {
    let rf = |r: HD| (r.scale(-0.3)).exp() * (r + HD::constant(1.0));
    let sf = |t: HD| t.cos() + t.sin() * t.sin();
    for bg in [kerr(), bolt()] {
        let mode = ModeIndex::new(&bg, 2.0, 0.7, 0.0);
        for eq in [Equation::Plain, Equation::Tilded] {
            for p in random_points(&bg, 5, 8) {
                let id = teukolsky_operator_identity(&bg, eq, &mode, &rf, &sf, &p).unwrap();
                assert!(id.residual < 1e-9, "{bg:?} {eq:?} {p:?} {id:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_identity_and_signs(r_off in 1e-3f64..50.0, x in -0.999f64..0.999, m in -3i32..=3, n in -4i64..=4, a in -0.9f64..0.9) {
        let bg = Background::kerr(1.0, a).unwrap();
        let w = -(m as f64) * bg.omega_h() + bg.kappa() * n as f64;
        let mode = ModeIndex::new(&bg, m as f64, w, 2.0);
        let d = uv_decomposition_residual(&bg, &mode, bg.r_plus() + r_off, x).unwrap();
        prop_assert!(d.residual < 1e-10 * (1.0 + d.total.abs()), "{:?}", d);
        prop_assert!(d.terms[0] < 0.0 && d.terms[1] <= 0.0 && d.terms[2] <= 0.0);
    }

    #[test]
    fn separation_lambda_independent(r_off in 0.1f64..10.0, th in 0.1f64..3.0, shift in -20.0f64..20.0) {
        let bg = kerr();
        let p = ChartPoint::new(0.3, bg.r_plus() + r_off, th, 0.9);
        let md = ModeIndex::new(&bg, -1.0, bg.kappa(), 1.0);
        let a = separation_consistency(&bg, Equation::Plain, &md, &r_test, &s_test, &p).unwrap();
        let b = separation_consistency(&bg, Equation::Plain, &md.with_lambda(1.0 + shift), &r_test, &s_test, &p).unwrap();
        prop_assert!((a.residual - b.residual).abs() < 1e-12 * (1.0 + a.l_phi));
    }
}
