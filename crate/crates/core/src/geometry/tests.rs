use std::f64::consts::{FRAC_PI_2, PI};

use approx::assert_relative_eq;
use proptest::prelude::*;

use super::*;

fn kerr(m: f64, a: f64) -> Background {
    Background::kerr(m, a).unwrap()
}

#[test]
fn schwarzschild_metric_at_r3() {
    let g = metric_eval(&kerr(1.0, 0.0), &ChartPoint::at(3.0, FRAC_PI_2))
        .unwrap()
        .g;
    assert_relative_eq!(g[R][R], 3.0, max_relative = 1e-14);
    assert_relative_eq!(g[T][T], 1.0 / 3.0, max_relative = 1e-14);
    assert_relative_eq!(g[TH][TH], 9.0, max_relative = 1e-14);
    assert_relative_eq!(g[PH][PH], 9.0, max_relative = 1e-14);
    assert_eq!(g[T][PH], 0.0);
}

#[test]
fn taub_bolt_metric_at_r3() {
    let bg = Background::taub_bolt(1.0).unwrap();
    let g = metric_eval(&bg, &ChartPoint::at(3.0, FRAC_PI_2)).unwrap().g;
    assert_relative_eq!(g[R][R], 3.2, max_relative = 1e-14);
    assert_relative_eq!(g[T][T], 1.25, max_relative = 1e-14);
    assert_relative_eq!(g[TH][TH], 8.0, max_relative = 1e-14);
    assert_relative_eq!(g[PH][PH], 8.0, max_relative = 1e-14);
}

#[test]
fn metric_rejects_inner_points() {
    let bg = kerr(1.0, 0.5);
    assert!(metric_eval(&bg, &ChartPoint::at(2.0, 1.0)).is_err());
    assert!(metric_eval(&bg, &ChartPoint::at(3.0, 0.0)).is_err());
    assert!(Background::kerr(-1.0, 0.0).is_err());
    assert!(Background::taub_bolt(0.0).is_err());
}

#[test]
fn carter_tetrad_schwarzschild() {
    let t = tetrad_eval(&kerr(1.0, 0.0), &ChartPoint::at(3.0, FRAC_PI_2)).unwrap();
    assert_relative_eq!(t.l[T].re, 3.0 / 6f64.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(t.l[R].im, 1.0 / 6f64.sqrt(), max_relative = 1e-14);
    let n = (1.0 / 3.0) * (3.0 / 6f64.sqrt()).powi(2) + 3.0 * (1.0 / 6f64.sqrt()).powi(2);
    assert_relative_eq!(n, 1.0, max_relative = 1e-14);
}

#[test]
fn taub_bolt_tetrad_m() {
    let bg = Background::taub_bolt(1.0).unwrap();
    let t = tetrad_eval(&bg, &ChartPoint::at(3.0, FRAC_PI_2)).unwrap();
    assert!((t.m[R].re - 0.395285).abs() < 1e-6);
    assert!((t.m[T].im - 0.632456).abs() < 1e-6);
    let gram = gram_matrix(&bg, &ChartPoint::at(3.0, FRAC_PI_2)).unwrap();
    assert_relative_eq!(gram[2][3].re, 1.0, max_relative = 1e-14);
}

#[test]
fn christoffel_schwarzschild() {
    let ch = christoffel_eval(&kerr(1.0, 0.0), &ChartPoint::at(3.0, FRAC_PI_2)).unwrap();
    // Hand formula −½ g^{rr} ∂_r g_tt with g^{rr} = 1/3, ∂_r g_tt = 2/9.
    assert_relative_eq!(ch.gamma[R][T][T], -1.0 / 27.0, max_relative = 1e-13);
    for l in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(ch.gamma[l][m][n], ch.gamma[l][n][m]);
            }
        }
    }
}

#[test]
fn metric_compatibility_at_random_points() {
    for bg in [kerr(1.0, 0.5), Background::taub_bolt(1.0).unwrap()] {
        for p in random_points(&bg, 20, 7) {
            assert!(metric_compatibility_residual(&bg, &p).unwrap() < 1e-9);
        }
    }
}

#[test]
fn lattice_generators() {
    let l = identification_lattice(&kerr(1.0, 0.0));
    assert_relative_eq!(l.generators[0][0], 8.0 * PI, max_relative = 1e-14);
    assert_eq!(l.generators[0][1], 0.0);
    assert_eq!(l.generators[1], [0.0, 2.0 * PI]);
    let l = identification_lattice(&Background::taub_bolt(1.0).unwrap());
    assert_eq!(l.generators, [[4.0 * PI, 0.0], [2.0 * PI, 2.0 * PI]]);
    let bg = kerr(1.0, 0.5);
    assert!((bg.kappa() - 0.263932).abs() < 1e-6);
    assert!((bg.omega_h() - 0.118034).abs() < 1e-6);
}

#[test]
fn kerr_regularity_probes() {
    for a in [0.0, 0.5] {
        let bg = kerr(1.0, a);
        let bolt = chart_regularity_probe(&bg, ProbeKind::Bolt).unwrap();
        assert!(
            (bolt.fitted_exponent.unwrap() - 2.0).abs() < 1e-3,
            "{bolt:?}"
        );
        // Prefactor one means the period 2π/κ removes the conical singularity.
        assert!(
            (bolt.fitted_prefactor.unwrap() - 1.0).abs() < 1e-3,
            "{bolt:?}"
        );
        let axis = chart_regularity_probe(&bg, ProbeKind::AxisFixedPoint).unwrap();
        assert!(
            (axis.fitted_exponent.unwrap() - 2.0).abs() < 1e-3,
            "{axis:?}"
        );
        assert!(chart_regularity_probe(&bg, ProbeKind::Transition).is_err());
    }
}

#[test]
fn taub_bolt_regularity_and_transition() {
    let bg = Background::taub_bolt(1.0).unwrap();
    let bolt = chart_regularity_probe(&bg, ProbeKind::Bolt).unwrap();
    assert!(
        bolt.passed && (bolt.fitted_prefactor.unwrap() - 1.0).abs() < 1e-3,
        "{bolt:?}"
    );
    let axis = chart_regularity_probe(&bg, ProbeKind::AxisFixedPoint).unwrap();
    assert!(axis.passed, "{axis:?}");
    let tr = chart_regularity_probe(&bg, ProbeKind::Transition).unwrap();
    assert!(tr.max_mismatch.unwrap() < 1e-10, "{tr:?}");
}

fn any_background() -> impl Strategy<Value = Background> {
    prop_oneof![
        (0.2f64..5.0, -4.0f64..4.0).prop_map(|(m, a)| Background::kerr(m, a).unwrap()),
        (0.2f64..5.0).prop_map(|n| Background::taub_bolt(n).unwrap()),
    ]
}

fn any_point(bg: Background) -> impl Strategy<Value = (Background, ChartPoint)> {
    let r0 = bg.inner_radius();
    (r0 * 1e-3..20.0 * r0, 0.01f64..PI - 0.01)
        .prop_map(move |(dr, th)| (bg, ChartPoint::at(r0 + dr, th)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn metric_positive_definite((bg, p) in any_background().prop_flat_map(any_point)) {
        let g = metric_eval(&bg, &p).unwrap();
        prop_assert!(g.min_eigenvalue() > 0.0);
        for a in 0..4 { for b in 0..4 { prop_assert_eq!(g.g[a][b], g.g[b][a]); } }
    }
}

proptest! {
    #[test]
    fn tetrad_gram_is_constant((bg, p) in any_background().prop_flat_map(any_point)) {
        let gram = gram_matrix(&bg, &p).unwrap();
        let want = reference_gram();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((gram[i][j] - want[i][j]).norm() < 1e-12, "{:?} {} {}", gram[i][j], i, j);
            }
        }
    }

    #[test]
    fn kerr_constants(m in 0.1f64..10.0, a in -10.0f64..10.0) {
        let bg = Background::kerr(m, a).unwrap();
        let scale = m * m + a * a;
        prop_assert!(bg.delta(bg.r_plus()).abs() < 1e-12 * scale);
        prop_assert!(bg.delta(bg.r_minus()).abs() < 1e-12 * scale);
        prop_assert!((2.0 * m * bg.r_plus() * bg.kappa() - m.hypot(a)).abs() < 1e-12 * m.hypot(a));
        prop_assert!(bg.r_plus() > a.abs());
    }

    #[test]
    fn hyperdual_matches_central_differences((bg, p) in any_background().prop_flat_map(any_point)) {
        let jet = metric_jet(&bg, p.r, p.theta).unwrap();
        let h = 1e-5;
        for (idx, dr, dth) in [(R, h, 0.0), (TH, 0.0, h)] {
            let gp = metric_components(&bg, p.r + dr, p.theta + dth);
            let gm = metric_components(&bg, p.r - dr, p.theta - dth);
            for a in 0..4 {
                for b in 0..4 {
                    let fd = (gp[a][b] - gm[a][b]) / (2.0 * h);
                    let ad = jet.dg[idx][a][b];
                    let scale = ad.abs().max(jet.g[a][b].abs()).max(1e-300);
                    prop_assert!((fd - ad).abs() <= 1e-6 * scale, "{} {} {} fd={} ad={}", idx, a, b, fd, ad);
                }
            }
        }
    }
}
