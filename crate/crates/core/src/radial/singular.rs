use serde::Serialize;

use super::expansion::InfinityExpansion;
use crate::separation::{delta_u, Equation, PotentialSpec};
use crate::{Background, Complex64, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularKind {
    Regular,
    IrregularRank1,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SingularLocation {
    /// `r₊` for Kerr, `2N` for Taub-bolt.
    Inner(f64),
    /// `r₋` for Kerr, `N/2` for Taub-bolt.
    Outer(f64),
    Infinity,
}

impl SingularLocation {
    pub fn radius(&self) -> Option<f64> {
        match *self {
            SingularLocation::Inner(r) | SingularLocation::Outer(r) => Some(r),
            SingularLocation::Infinity => None,
        }
    }
}

/// Exponents at one singular point of `(ΔR')' + UR = 0`.
///
/// At a finite point the pair is `±ρ` with `R ~ (r − r₀)^ρ`. At a regular point
/// at infinity it is the pair `s` with `R ~ r^s`; at the irregular point it is
/// the pair of normal-solution powers, decaying branch first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPointData {
    pub location: SingularLocation,
    pub kind: SingularKind,
    /// The closed forms quoted for the untilded equation; `None` where none is quoted.
    pub paper_exponents: Option<[Complex64; 2]>,
    pub oracle_exponents: [Complex64; 2],
}

fn pair(x: Complex64) -> [Complex64; 2] {
    let x = if x.re < 0.0 || (x.re == 0.0 && x.im < 0.0) {
        -x
    } else {
        x
    };
    [x, -x]
}

fn real_pair(x: f64) -> [Complex64; 2] {
    pair(Complex64::new(x, 0.0))
}

/// `ρ = ±√(−c/Δ'(r₀))` with `c = lim (r − r₀)U(r) = ΔU(r₀)/Δ'(r₀)`.
pub fn indicial_oracle(spec: &PotentialSpec, r0: f64) -> Result<[Complex64; 2]> {
    let bg = &spec.background;
    let d1 = bg.delta_prime(r0);
    if bg.delta(r0).abs() > 1e-10 * (1.0 + r0 * r0) || d1 == 0.0 {
        return Err(Error::InvalidInput(format!(
            "r = {r0} is not a regular singular point"
        )));
    }
    let md = &spec.mode;
    let rho2 = |r: f64| -delta_u(bg, spec.equation, md.m, md.omega, md.lambda, r) / (d1 * d1);
    let mut x = rho2(r0);
    // A double root shows up as ±√(rounding). The slope of ρ²(r) sets the size of the
    // cancelling terms, hence of the rounding in ρ²(r₀).
    let h = 1e-3 * r0.abs().max(1.0);
    let noise = 16.0
        * f64::EPSILON
        * (1.0 + (rho2(r0 + h).abs() + rho2(r0 - h).abs()) * r0.abs().max(1.0) / h);
    if x.abs() <= noise {
        x = 0.0;
    }
    Ok(pair(Complex64::new(x, 0.0).sqrt()))
}

/// The quoted exponents at `r = ∞` for `ω = 0`: `−3/2 ± i√(7/2 + Λ)`.
pub fn infinity_exponents(spec: &PotentialSpec) -> Result<[Complex64; 2]> {
    if spec.mode.omega != 0.0 {
        return Err(Error::InvalidInput(
            "infinity is irregular for omega != 0; use asymptotic_normal_solution".into(),
        ));
    }
    let root = Complex64::new(-(3.5 + spec.mode.lambda), 0.0).sqrt();
    let base = Complex64::new(-1.5, 0.0);
    Ok([base + root, base - root])
}

/// Exponents `s` of `R ~ r^s` at `r = ∞` for `ω = 0`, from the indicial equation
/// in `u = 1/r`.
pub fn infinity_exponents_oracle(spec: &PotentialSpec) -> Result<[Complex64; 2]> {
    if spec.mode.omega != 0.0 {
        return Err(Error::InvalidInput(
            "infinity is irregular for omega != 0".into(),
        ));
    }
    let e = InfinityExpansion::new(spec);
    // s(s − 1) + p₁ s + q₂ = 0
    let b = e.p[1] - 1.0;
    let disc = Complex64::new(b * b - 4.0 * e.q[2], 0.0).sqrt();
    Ok([(disc - b) * 0.5, (-disc - b) * 0.5])
}

fn quoted_finite(bg: &Background, spec: &PotentialSpec, inner: bool) -> Option<[Complex64; 2]> {
    let md = &spec.mode;
    match *bg {
        Background::Kerr { mass, spin } => {
            let (rp, rm) = (bg.r_plus(), bg.r_minus());
            let v = if inner {
                1.0 + (2.0 * mass * rp + spin * md.m) / (rp - rm)
            } else {
                -1.0 + (2.0 * mass * rm + spin * md.m) / (rp - rm)
            };
            Some(real_pair(v))
        }
        Background::TaubBolt { .. } if spec.equation == Equation::Plain => {
            Some(real_pair(if inner {
                md.omega - 1.0
            } else {
                md.omega / 4.0 - 1.0
            }))
        }
        Background::TaubBolt { .. } => None,
    }
}

/// All singular points of the radial equation with quoted and recomputed exponents.
pub fn singular_points(spec: &PotentialSpec) -> Result<Vec<SingularPointData>> {
    let bg = &spec.background;
    let mut out = Vec::with_capacity(3);
    for (inner, r0) in [(true, bg.r_plus()), (false, bg.r_minus())] {
        out.push(SingularPointData {
            location: if inner {
                SingularLocation::Inner(r0)
            } else {
                SingularLocation::Outer(r0)
            },
            kind: SingularKind::Regular,
            paper_exponents: quoted_finite(bg, spec, inner),
            oracle_exponents: indicial_oracle(spec, r0)?,
        });
    }
    let at_infinity = if spec.mode.omega == 0.0 {
        SingularPointData {
            location: SingularLocation::Infinity,
            kind: SingularKind::Regular,
            paper_exponents: Some(infinity_exponents(spec)?),
            oracle_exponents: infinity_exponents_oracle(spec)?,
        }
    } else {
        let dec = super::asymptotic_normal_solution(spec, super::Branch::Decaying)?;
        let gro = super::asymptotic_normal_solution(spec, super::Branch::Growing)?;
        let quoted = match (dec.paper_power, gro.paper_power) {
            (Some(a), Some(b)) => Some([Complex64::new(a, 0.0), Complex64::new(b, 0.0)]),
            _ => None,
        };
        SingularPointData {
            location: SingularLocation::Infinity,
            kind: SingularKind::IrregularRank1,
            paper_exponents: quoted,
            oracle_exponents: [
                Complex64::new(dec.power, 0.0),
                Complex64::new(gro.power, 0.0),
            ],
        }
    };
    out.push(at_infinity);
    Ok(out)
}
