use serde::Serialize;

use super::lattice::ModeIndex;
use crate::geometry::{c, Background};
use crate::{Error, Real, Result};

/// The untilded equation `𝐋Φ = 0` or its tilded partner `𝐋̃Φ̃ = 0`.
///
/// For Kerr the tilded problem is the untilded one with `cosθ → −cosθ`, so
/// `Ũ = U` and `Ṽ(x) = V(−x)`; Taub-bolt has its own `Ũ` and the same `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum Equation {
    #[default]
    Plain,
    Tilded,
}

impl Equation {
    pub fn is_tilded(self) -> bool {
        self == Equation::Tilded
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub background: Background,
    pub mode: ModeIndex,
    pub equation: Equation,
}

impl PotentialSpec {
    pub fn new(background: Background, mode: ModeIndex, equation: Equation) -> Self {
        PotentialSpec {
            background,
            mode,
            equation,
        }
    }
}

/// `U(r)` (or `Ũ(r)`) for any scalar type. Singular at the roots of `Δ`.
pub fn potential_u_at<T: Real>(
    bg: &Background,
    eq: Equation,
    m: f64,
    omega: f64,
    lambda: f64,
    r: T,
) -> T {
    delta_u(bg, eq, m, omega, lambda, r) / bg.delta(r)
}

/// `Δ·U(r)`, which is regular at the roots of `Δ`.
pub fn delta_u<T: Real>(bg: &Background, eq: Equation, m: f64, omega: f64, lambda: f64, r: T) -> T {
    let delta = bg.delta(r);
    match *bg {
        Background::Kerr { mass, spin: a } => {
            let q = (r * r - c(a * a)).scale(omega) + c(a * m) + (r - c(mass)).scale(2.0);
            -(q * q) + (r.scale(8.0 * omega) - c(lambda)) * delta
        }
        Background::TaubBolt { nut: n } => {
            let sigma = r * r - c(n * n);
            let (well, q) = match eq {
                Equation::Plain => {
                    let rm = r - c(n);
                    let poly = (r * r).scale(4.0) - r.scale(11.0 * n) + c(3.0 * n * n);
                    (
                        (r + c(n)).scale(-4.0 * n) / (rm * rm),
                        sigma.scale(omega) + poly.scale(n) / rm,
                    )
                }
                Equation::Tilded => {
                    let rp = r + c(n);
                    let poly = (r * r).scale(4.0) - r.scale(19.0 * n) + c(13.0 * n * n);
                    (
                        (r - c(n)).scale(-36.0 * n) / (rp * rp),
                        sigma.scale(omega) - poly.scale(n) / rp,
                    )
                }
            };
            (well - c(lambda)) * delta - (q * q).scale(0.25 / (n * n))
        }
    }
}

pub fn potential_u(spec: &PotentialSpec, r: f64) -> Result<f64> {
    let bg = &spec.background;
    let delta = bg.delta(r);
    if !r.is_finite() || delta.abs() <= 1e-14 * r.abs().max(1.0).powi(2) {
        return Err(Error::Domain(format!(
            "U evaluated at a root of Delta, r = {r}"
        )));
    }
    let md = &spec.mode;
    let u = potential_u_at(bg, spec.equation, md.m, md.omega, md.lambda, r);
    if !u.is_finite() {
        return Err(Error::Domain(format!("U has a pole at r = {r}")));
    }
    Ok(u)
}

/// `V(x) = p(x) − f(x)²/(1 − x²) + Λ` with polynomial `f` and `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngularCoefficients {
    /// `f(x) = f[0] + f[1] x + f[2] x²`.
    pub f: [f64; 3],
    /// `p(x) = p[0] + p[1] x`.
    pub p: [f64; 2],
    pub lambda: f64,
}

impl AngularCoefficients {
    pub fn f_at<T: Real>(&self, x: T) -> T {
        (x.scale(self.f[2]) + c(self.f[1])) * x + c(self.f[0])
    }

    pub fn p_at<T: Real>(&self, x: T) -> T {
        x.scale(self.p[1]) + c(self.p[0])
    }

    /// `V` without the constant `Λ`, at an interior point.
    pub fn v_reduced<T: Real>(&self, x: T) -> T {
        let f = self.f_at(x);
        self.p_at(x) - f * f / (T::one() - x * x)
    }

    pub fn v_at<T: Real>(&self, x: T) -> T {
        self.v_reduced(x) + c(self.lambda)
    }
}

pub fn angular_coefficients(spec: &PotentialSpec) -> AngularCoefficients {
    let ModeIndex {
        m, omega, lambda, ..
    } = spec.mode;
    match spec.background {
        Background::Kerr { spin: a, .. } => {
            let aw = a * omega;
            let s = if spec.equation.is_tilded() { -1.0 } else { 1.0 };
            AngularCoefficients {
                f: [aw - m, 2.0 * s, -aw],
                p: [0.0, 8.0 * aw * s],
                lambda,
            }
        }
        Background::TaubBolt { .. } => AngularCoefficients {
            f: [m, omega + 2.0, 0.0],
            p: [0.0, 0.0],
            lambda,
        },
    }
}

/// Threshold on `|f(±1)|` below which the endpoint singularity is removable.
pub const REMOVABLE_TOL: f64 = 1e-12;

pub fn potential_v(spec: &PotentialSpec, x: f64) -> Result<f64> {
    let co = angular_coefficients(spec);
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    if x.abs() < 1.0 {
        return Ok(co.v_at(x));
    }
    // f² has a double zero against the simple zero of 1 − x², so that term drops out.
    if co.f_at(x).abs() <= REMOVABLE_TOL {
        Ok(co.p_at(x) + co.lambda)
    } else {
        Err(Error::Domain(format!(
            "V has a pole at x = {x}: f(x) = {}",
            co.f_at(x)
        )))
    }
}

/// The three-term splitting of `U(r) + V(x)` for Kerr.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UvDecomposition {
    pub residual: f64,
    pub terms: [f64; 3],
    pub total: f64,
}

pub fn uv_decomposition_terms<T: Real>(
    bg: &Background,
    m: f64,
    omega: f64,
    r: T,
    x: T,
) -> Result<[T; 3]> {
    let Background::Kerr { mass, spin: a } = *bg else {
        return Err(Error::InvalidInput(
            "the U+V decomposition is defined for Kerr only".into(),
        ));
    };
    let one = T::one();
    let ax = x.scale(a);
    let delta = bg.delta(r);
    let w = one - x * x;
    let rho2 = delta + w.scale(a * a);
    let t1 = (r + ax).scale(-16.0 * mass) / ((r - ax) * (r - ax));
    let n2 = x.scale(a * a) * (x.scale(m) - c(2.0))
        - w.scale(2.0 * a) * ((r.scale(omega) - one).scale(mass) + r)
        + r * (c::<T>(m) - x.scale(2.0)) * (c::<T>(2.0 * mass) - r);
    let t2 = -(n2 * n2) / (w * rho2 * delta);
    let n3 = (ax + r.scale(3.0)).scale(2.0 * mass)
        + (r - ax) * (r + ax) * ((r - ax).scale(omega) - c(2.0));
    let t3 = -(n3 * n3) / ((r - ax) * (r - ax) * rho2);
    Ok([t1, t2, t3])
}

/// Residual of the splitting against `U(r) + V(x)`; the `Λ` terms cancel.
pub fn uv_decomposition_residual(
    bg: &Background,
    mode: &ModeIndex,
    r: f64,
    x: f64,
) -> Result<UvDecomposition> {
    if !(r > bg.r_plus() && x.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "need r > r+ and |x| < 1, got r = {r}, x = {x}"
        )));
    }
    let terms = uv_decomposition_terms(bg, mode.m, mode.omega, r, x)?;
    let spec = PotentialSpec::new(*bg, *mode, Equation::Plain);
    let total = potential_u(&spec, r)? + potential_v(&spec, x)?;
    let residual = (terms.iter().sum::<f64>() - total).abs();
    Ok(UvDecomposition {
        residual,
        terms,
        total,
    })
}
