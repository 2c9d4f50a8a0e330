use std::f64::consts::PI;

use serde::Serialize;

use super::background::{c, Background};
use super::metric::{metric_components, Mat4};
use crate::numerics::HyperDual;
use crate::{Error, Real, Result};

/// Two generating translations `(Δt, Δφ)` of the identified `(t, φ)` torus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeDescriptor {
    pub generators: [[f64; 2]; 2],
}

pub fn identification_lattice(bg: &Background) -> LatticeDescriptor {
    match bg {
        Background::Kerr { .. } => {
            let k = bg.kappa();
            LatticeDescriptor {
                generators: [
                    [2.0 * PI / k, -2.0 * PI * bg.omega_h() / k],
                    [0.0, 2.0 * PI],
                ],
            }
        }
        Background::TaubBolt { .. } => LatticeDescriptor {
            generators: [[4.0 * PI, 0.0], [2.0 * PI, 2.0 * PI]],
        },
    }
}

/// Coordinate systems regular at the bolt or nut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// Kerr `(t̃, r̃, θ, φ̃)`: `r = M + √(M²+a²) cosh r̃`, `t = t̃/κ`, `φ = φ̃ − (Ω/κ) t̃`.
    KerrRegular,
    /// Taub-bolt `(t̃, r̃, θ̃, φ)`: `r = N(5 + 3 cosh r̃)/4`, `t = 2t̃ − φ`, `θ = 2 arctan(θ̃/2)`.
    BoltNorth,
    /// Taub-bolt `(t̂, r̃, θ̂, φ)`: `t = 2t̂ + φ`, `θ = 2 arccot(θ̂/2)`.
    BoltSouth,
}

/// Map chart coordinates to `(t, r, θ, φ)`.
pub fn chart_to_boyer_lindquist<S: Real>(
    bg: &Background,
    chart: Chart,
    x: [S; 4],
) -> Result<[S; 4]> {
    let [a0, rt, a2, a3] = x;
    match (bg, chart) {
        (Background::Kerr { mass, spin }, Chart::KerrRegular) => {
            let k = bg.kappa();
            let r = c::<S>(*mass) + rt.cosh().scale(mass.hypot(*spin));
            Ok([a0.scale(1.0 / k), r, a2, a3 - a0.scale(bg.omega_h() / k)])
        }
        (Background::TaubBolt { nut }, Chart::BoltNorth) => {
            let r = (c::<S>(5.0) + rt.cosh().scale(3.0)).scale(0.25 * nut);
            Ok([a0.scale(2.0) - a3, r, (a2.scale(0.5)).atan().scale(2.0), a3])
        }
        (Background::TaubBolt { nut }, Chart::BoltSouth) => {
            let r = (c::<S>(5.0) + rt.cosh().scale(3.0)).scale(0.25 * nut);
            // 2 arccot(y/2) = π − 2 arctan(y/2) for y > 0
            Ok([
                a0.scale(2.0) + a3,
                r,
                c::<S>(PI) - (a2.scale(0.5)).atan().scale(2.0),
                a3,
            ])
        }
        _ => Err(Error::InvalidInput(format!(
            "chart {chart:?} does not belong to this background"
        ))),
    }
}

/// Jacobian `∂(t,r,θ,φ)/∂(chart coords)` and the mapped point.
fn chart_jacobian(bg: &Background, chart: Chart, x: [f64; 4]) -> Result<([f64; 4], Mat4<f64>)> {
    let mut jac = [[0.0; 4]; 4];
    let mut y = [0.0; 4];
    for j in 0..4 {
        let mut args = x.map(HyperDual::constant);
        args[j].d1 = 1.0;
        let out = chart_to_boyer_lindquist(bg, chart, args)?;
        for i in 0..4 {
            jac[i][j] = out[i].d1;
            y[i] = out[i].value;
        }
    }
    Ok((y, jac))
}

/// Metric components in a regular chart (pullback of the line element).
pub fn chart_metric(bg: &Background, chart: Chart, x: [f64; 4]) -> Result<Mat4<f64>> {
    let (y, jac) = chart_jacobian(bg, chart, x)?;
    let g = metric_components(bg, y[1], y[2]);
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    s += jac[i][a] * g[i][j] * jac[j][b];
                }
            }
            out[a][b] = s;
        }
    }
    Ok(out)
}

/// Taub-bolt transition `(t̃, r̃, θ̃, φ) → (t̂, r̃, θ̂, φ) = (t̃ − φ, r̃, 4/θ̃, φ)`.
pub fn bolt_transition<S: Real>(x: [S; 4]) -> [S; 4] {
    [x[0] - x[3], x[1], c::<S>(4.0) / x[2], x[3]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeKind {
    AxisFixedPoint,
    Bolt,
    Transition,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub which: ProbeKind,
    pub quantity: String,
    pub fitted_exponent: Option<f64>,
    pub expected_exponent: Option<f64>,
    /// Fitted coefficient `A` in `A·x^p`; equal to one when the period is the regular one.
    pub fitted_prefactor: Option<f64>,
    pub max_mismatch: Option<f64>,
    pub samples: usize,
    pub passed: bool,
}

const FIT_LO: f64 = 1e-4;
const FIT_HI: f64 = 1e-2;
const FIT_SAMPLES: usize = 25;

fn log_log_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() < 3 || xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Fit(
            "need at least three positive finite samples".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx < 1e-6 {
        return Err(Error::Fit("sampled range too coarse".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, (my - slope * mx).exp()))
}

fn fit_grid() -> Vec<f64> {
    (0..FIT_SAMPLES)
        .map(|i| FIT_LO * (FIT_HI / FIT_LO).powf(i as f64 / (FIT_SAMPLES - 1) as f64))
        .collect()
}

/// Fit leading powers of regularized metric components, or compare the two
/// Taub-bolt charts through their transition map.
pub fn chart_regularity_probe(bg: &Background, which: ProbeKind) -> Result<RegularityReport> {
    let grid = fit_grid();
    let (chart, quantity) = match (bg, which) {
        (Background::Kerr { .. }, ProbeKind::Transition) => {
            return Err(Error::InvalidInput(
                "Kerr has a single regular chart; no transition map".into(),
            ))
        }
        (Background::Kerr { .. }, ProbeKind::Bolt) => (Chart::KerrRegular, "g_tt/Sigma vs r~"),
        (Background::Kerr { .. }, ProbeKind::AxisFixedPoint) => {
            (Chart::KerrRegular, "g_phiphi/Sigma vs sin(theta)")
        }
        (Background::TaubBolt { .. }, ProbeKind::Bolt) => (Chart::BoltNorth, "g_tt/Sigma vs r~"),
        (Background::TaubBolt { .. }, ProbeKind::AxisFixedPoint) => {
            (Chart::BoltNorth, "g_phiphi/Sigma vs theta~")
        }
        (Background::TaubBolt { .. }, ProbeKind::Transition) => return transition_probe(bg),
    };
    let mut xs = Vec::with_capacity(grid.len());
    let mut ys = Vec::with_capacity(grid.len());
    for &s in &grid {
        let (x, idx, abscissa) = match (which, chart) {
            (ProbeKind::Bolt, _) => ([0.0, s, 1.0, 0.0], 0, s),
            (ProbeKind::AxisFixedPoint, Chart::KerrRegular) => ([0.0, 1.0, s, 0.0], 3, s.sin()),
            _ => ([0.0, 1.0, s, 0.0], 3, s),
        };
        let g = chart_metric(bg, chart, x)?;
        let y = chart_to_boyer_lindquist(bg, chart, x)?;
        xs.push(abscissa);
        ys.push(g[idx][idx] / bg.sigma(y[1], y[2]));
    }
    let (slope, pref) = log_log_fit(&xs, &ys)?;
    Ok(RegularityReport {
        which,
        quantity: quantity.into(),
        fitted_exponent: Some(slope),
        expected_exponent: Some(2.0),
        fitted_prefactor: Some(pref),
        max_mismatch: None,
        samples: xs.len(),
        passed: (slope - 2.0).abs() < 1e-3,
    })
}

fn transition_probe(bg: &Background) -> Result<RegularityReport> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..8 {
        for j in 0..6 {
            let x = [
                0.3 + 0.1 * i as f64,
                0.2 + 0.35 * i as f64,
                0.5 + 1.2 * j as f64,
                1.0 - 0.2 * j as f64,
            ];
            let g1 = chart_metric(bg, Chart::BoltNorth, x)?;
            let mut tj = [[0.0; 4]; 4];
            let mut x2 = [0.0; 4];
            for b in 0..4 {
                let mut args = x.map(HyperDual::constant);
                args[b].d1 = 1.0;
                let out = bolt_transition(args);
                for a in 0..4 {
                    tj[a][b] = out[a].d1;
                    x2[a] = out[a].value;
                }
            }
            let g2 = chart_metric(bg, Chart::BoltSouth, x2)?;
            let scale = g1.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            for a in 0..4 {
                for b in 0..4 {
                    let mut s = 0.0;
                    for p in 0..4 {
                        for q in 0..4 {
                            s += tj[p][a] * g2[p][q] * tj[q][b];
                        }
                    }
                    worst = worst.max((s - g1[a][b]).abs() / scale.max(1.0));
                }
            }
            count += 1;
        }
    }
    Ok(RegularityReport {
        which: ProbeKind::Transition,
        quantity: "chart-2 metric pulled back through transition vs chart-1 metric".into(),
        fitted_exponent: None,
        expected_exponent: None,
        fitted_prefactor: None,
        max_mismatch: Some(worst),
        samples: count,
        passed: worst < 1e-10,
    })
}
