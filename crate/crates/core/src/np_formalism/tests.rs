use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

use approx::assert_relative_eq;

use super::*;
use crate::geometry::{random_points, Background, ChartPoint};

fn kerr() -> Background {
    Background::kerr(1.0, 0.5).unwrap()
}

fn bolt() -> Background {
    Background::taub_bolt(1.0).unwrap()
}

#[test]
fn schwarzschild_closed_coefficients() {
    let s = spin_coeffs_closed(
        &Background::kerr(1.0, 0.0).unwrap(),
        &ChartPoint::at(3.0, FRAC_PI_2),
    )
    .unwrap();
    let want = -1.0 / (3.0 * 6f64.sqrt());
    assert_relative_eq!(s.plain.rho.im, want, max_relative = 1e-14);
    assert_relative_eq!(s.plain.mu.im, want, max_relative = 1e-14);
    assert!(s.plain.alpha.norm() < 1e-16 && s.plain.beta.norm() < 1e-16);
}

#[test]
fn taub_bolt_closed_coefficients() {
    let s = spin_coeffs_closed(&bolt(), &ChartPoint::at(3.0, FRAC_PI_4)).unwrap();
    for z in [
        s.plain.gamma,
        s.plain.epsilon,
        s.tilded.gamma,
        s.tilded.epsilon,
    ] {
        assert_relative_eq!(z.im, 0.125, max_relative = 1e-14);
    }
    for z in [
        s.plain.kappa,
        s.plain.lambda,
        s.plain.mu,
        s.plain.nu,
        s.plain.rho,
        s.plain.sigma,
    ] {
        assert_eq!(z.norm(), 0.0);
    }
    let s = spin_coeffs_closed(&bolt(), &ChartPoint::at(4.0, FRAC_PI_2)).unwrap();
    assert!((s.plain.pi.re + 5.0 * (7.0f64 / 30.0).sqrt() / 15.0).abs() < 1e-14);
    assert!((s.plain.pi.re + 0.161015).abs() < 1e-6);
}

#[test]
fn numeric_matches_closed_kerr() {
    let p = ChartPoint::at(3.0, FRAC_PI_3);
    let (num, resid) = spin_coeffs_numeric_with_residual(&kerr(), &p).unwrap();
    let closed = spin_coeffs_closed(&kerr(), &p).unwrap();
    assert!(resid < 1e-10, "fit residual {resid}");
    assert!(
        num.max_difference(&closed) < 1e-8,
        "{:?}\n{:?}",
        num,
        closed
    );
    assert!(num.conjugation_residual() < 1e-10);
}

#[test]
fn numeric_matches_closed_random() {
    for bg in [
        kerr(),
        bolt(),
        Background::kerr(2.0, -1.3).unwrap(),
        Background::taub_bolt(0.7).unwrap(),
    ] {
        for p in random_points(&bg, 100, 11) {
            let num = spin_coeffs_numeric(&bg, &p).unwrap();
            let closed = spin_coeffs_closed(&bg, &p).unwrap();
            assert!(num.max_difference(&closed) < 1e-8, "{bg:?} {p:?}");
        }
    }
}

#[test]
fn weyl_closed_values() {
    let p = ChartPoint::at(3.0, FRAC_PI_3);
    let w = weyl_scalars_numeric(&kerr(), &p).unwrap();
    assert_relative_eq!(w.psi[2].re, 1.0 / 2.75f64.powi(3), max_relative = 1e-10);
    assert_relative_eq!(
        w.psi_tilde[2].re,
        1.0 / 3.25f64.powi(3),
        max_relative = 1e-10
    );
    let w = weyl_scalars_numeric(&bolt(), &ChartPoint::at(3.0, 1.1)).unwrap();
    assert_relative_eq!(w.psi[2].re, 1.0 / 32.0, max_relative = 1e-10);
    assert_relative_eq!(w.psi_tilde[2].re, 9.0 / 256.0, max_relative = 1e-10);
}

#[test]
fn weyl_adapted_and_conjugation() {
    for bg in [kerr(), bolt()] {
        for p in random_points(&bg, 40, 3) {
            let w = weyl_scalars_numeric(&bg, &p).unwrap();
            let c = weyl_scalars_closed(&bg, &p).unwrap();
            for k in [0, 1, 3, 4] {
                assert!(
                    w.psi[k].norm() < 1e-9 && w.psi_tilde[k].norm() < 1e-9,
                    "{bg:?} {p:?} {w:?}"
                );
            }
            assert!((w.psi[2] - c.psi[2]).norm() < 1e-8);
            assert!((w.psi_tilde[2] - c.psi_tilde[2]).norm() < 1e-8);
            assert!(w.psi[2].im.abs() < 1e-10 && w.conjugation_residual() < 1e-10);
            // Ψ₂ (r − a cosθ)³ = M and Ψ₂ 4(r − N)³ = N.
            let inv = match bg {
                Background::Kerr { mass, spin } => {
                    w.psi[2].re * (p.r - spin * p.theta.cos()).powi(3) / mass
                }
                Background::TaubBolt { nut } => w.psi[2].re * 4.0 * (p.r - nut).powi(3) / nut,
            };
            assert!((inv - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn tilde_is_involution() {
    let s = spin_coeffs_closed(&kerr(), &ChartPoint::at(3.0, 1.0)).unwrap();
    assert_eq!(tilde_map(&tilde_map(&s)), s);
    let t = tilde_map(&s);
    let (r, th) = (3.0f64, 1.0f64);
    let d = r * r - 2.0 * r - 0.25;
    let sig = r * r - 0.25 * th.cos().powi(2);
    assert_relative_eq!(
        t.plain.rho.im,
        -(d / (2.0 * sig)).sqrt() / (r + 0.5 * th.cos()),
        max_relative = 1e-14
    );
    assert_eq!(t.plain.kappa.norm(), 0.0);
    let w = weyl_scalars_closed(&bolt(), &ChartPoint::at(3.0, 1.0)).unwrap();
    assert_eq!(tilde_map(&tilde_map(&w)), w);
}

#[test]
fn np_residuals_small() {
    for bg in [kerr(), bolt()] {
        let mut agg = NPResidualReport::default();
        for p in random_points(&bg, 20, 5) {
            agg.merge(&np_residuals(&bg, &p).unwrap());
        }
        assert_eq!(agg.entries.len(), 36);
        assert!(agg.max() < 1e-8, "{bg:?} {:#?}", agg.entries);
    }
}

#[test]
fn bianchi_reduces_to_d_psi2() {
    let r = np_residuals(&kerr(), &ChartPoint::at(3.0, FRAC_PI_3)).unwrap();
    assert!(r.entries["deltat_Psi1"] < 1e-10);
    assert_eq!(r.entries["D_sigma"], 0.0);
}

#[test]
fn a1_vanishes() {
    let (a, at) = a1_identity_check(&kerr(), &ChartPoint::at(3.0, FRAC_PI_3)).unwrap();
    assert!(a < 1e-9 && at < 1e-9, "{a} {at}");
    let (a, at) = a1_identity_check(
        &Background::kerr(1.0, 0.0).unwrap(),
        &ChartPoint::at(3.0, 1.2),
    )
    .unwrap();
    assert!(a < 1e-12 && at < 1e-12);
    let (a, at) = a1_identity_check(&bolt(), &ChartPoint::at(3.0, FRAC_PI_2)).unwrap();
    assert!(a < 1e-9 && at < 1e-9);
}
