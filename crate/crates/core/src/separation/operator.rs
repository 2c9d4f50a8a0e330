use num_complex::Complex;
use serde::Serialize;

use super::lattice::ModeIndex;
use super::potentials::{angular_coefficients, potential_u_at, Equation, PotentialSpec};
use crate::geometry::{Background, ChartPoint, PH, R, T, TH};
use crate::np_formalism::{np_jets, psi2_closed, FrameOp};
use crate::numerics::{derive2, hessian, HyperDual};
use crate::{Error, Real, Result};

type C64 = Complex<f64>;
type HD = HyperDual<f64>;

/// Value, gradient and Hessian of a complex function of `(t, r, θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldJet {
    pub v: C64,
    pub g: [C64; 4],
    pub h: [[C64; 4]; 4],
}

pub fn field_jet(f: impl Fn([HD; 4]) -> Complex<HD>, x: [f64; 4]) -> FieldJet {
    let (vr, gr, hr) = hessian(|a| f(a).re, x);
    let (vi, gi, hi) = hessian(|a| f(a).im, x);
    FieldJet {
        v: C64::new(vr, vi),
        g: std::array::from_fn(|i| C64::new(gr[i], gi[i])),
        h: std::array::from_fn(|i| std::array::from_fn(|j| C64::new(hr[i][j], hi[i][j]))),
    }
}

/// `(A∂t + B∂φ + iC)²Φ` with `A, B, C` independent of `t, φ`.
fn square(j: &FieldJet, a: f64, b: f64, cc: f64) -> C64 {
    let i = C64::i();
    j.h[T][T] * (a * a)
        + j.h[T][PH] * (2.0 * a * b)
        + j.h[PH][PH] * (b * b)
        + i * (2.0 * cc) * (j.g[T] * a + j.g[PH] * b)
        - j.v * (cc * cc)
}

/// The four-dimensional operator `𝐋` (or `𝐋̃`) applied to a field jet at `(r, θ)`.
pub fn l_operator(bg: &Background, eq: Equation, j: &FieldJet, r: f64, theta: f64) -> C64 {
    let i = C64::i();
    let delta = bg.delta(r);
    let (st, ct) = theta.sin_cos();
    let radial = j.h[R][R] * delta + j.g[R] * bg.delta_prime(r);
    let polar = j.h[TH][TH] + j.g[TH] * (ct / st);
    match *bg {
        Background::Kerr { mass, spin: a } => {
            let s = if eq.is_tilded() { -1.0 } else { 1.0 };
            radial
                + square(j, r * r - a * a, -a, -2.0 * (r - mass)) / delta
                + i * (8.0 * (r + s * a * ct)) * j.g[T]
                + polar
                + square(j, a * st * st, 1.0, -2.0 * s * ct) / (st * st)
        }
        Background::TaubBolt { nut: n } => {
            let sigma = r * r - n * n;
            let amp = sigma / (2.0 * n);
            let (well, k) = match eq {
                Equation::Plain => (
                    -4.0 * n * (r + n) / ((r - n) * (r - n)),
                    -n * (4.0 * r * r - 11.0 * n * r + 3.0 * n * n) / (sigma * (r - n)),
                ),
                Equation::Tilded => (
                    -36.0 * n * (r - n) / ((r + n) * (r + n)),
                    n * (4.0 * r * r - 19.0 * n * r + 13.0 * n * n) / (sigma * (r + n)),
                ),
            };
            radial
                + j.v * well
                + square(j, amp, 0.0, amp * k) / delta
                + polar
                + square(j, ct, -1.0, -2.0 * ct) / (st * st)
        }
    }
}

fn mode_phase(mode: &ModeIndex, x: &[HD; 4]) -> Complex<HD> {
    let psi = x[PH].scale(mode.m) - x[T].scale(mode.omega);
    Complex::new(psi.cos(), psi.sin())
}

/// `Φ = e^{i(mφ − ωt)} R(r) S(θ)` evaluated on hyper-dual coordinates.
fn separated_field<'a>(
    mode: &'a ModeIndex,
    r_fn: &'a dyn Fn(HD) -> HD,
    s_fn: &'a dyn Fn(HD) -> HD,
) -> impl Fn([HD; 4]) -> Complex<HD> + 'a {
    move |x| {
        let rs = r_fn(x[R]) * s_fn(x[TH]);
        mode_phase(mode, &x) * Complex::new(rs, HD::constant(0.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeparationCheck {
    pub residual: f64,
    /// `|𝐋Φ|`, for scale.
    pub l_phi: f64,
    /// `𝐑R` and `𝐒S` at the point.
    pub radial: f64,
    pub angular: f64,
}

/// `|𝐋Φ − e^{i(mφ−ωt)}(S·𝐑R + R·𝐒S)|` for `Φ = e^{i(mφ−ωt)} R S`, where `𝐑`, `𝐒`
/// use the separated potentials with the mode's `Λ`.
pub fn separation_consistency(
    bg: &Background,
    eq: Equation,
    mode: &ModeIndex,
    r_fn: &dyn Fn(HD) -> HD,
    s_fn: &dyn Fn(HD) -> HD,
    p: &ChartPoint,
) -> Result<SeparationCheck> {
    p.validate(bg)?;
    let jet = field_jet(separated_field(mode, r_fn, s_fn), p.coords());
    let lhs = l_operator(bg, eq, &jet, p.r, p.theta);
    let (r0, r1, r2) = derive2(r_fn, p.r)?;
    let (s0, s1, s2) = derive2(s_fn, p.theta)?;
    let u = potential_u_at(bg, eq, mode.m, mode.omega, mode.lambda, p.r);
    let radial = bg.delta(p.r) * r2 + bg.delta_prime(p.r) * r1 + u * r0;
    let co = angular_coefficients(&PotentialSpec::new(*bg, *mode, eq));
    let (st, ct) = p.theta.sin_cos();
    let angular = s2 + s1 * ct / st + co.v_at(ct) * s0;
    let phase = C64::from_polar(1.0, mode.m * p.phi - mode.omega * p.t);
    let rhs = phase * (s0 * radial + r0 * angular);
    if !(lhs.norm().is_finite() && rhs.norm().is_finite()) {
        return Err(Error::Domain("non-finite operator value".into()));
    }
    Ok(SeparationCheck {
        residual: (lhs - rhs).norm(),
        l_phi: lhs.norm(),
        radial,
        angular,
    })
}

/// `𝐋Φ` for an arbitrary field given on hyper-dual coordinates.
pub fn apply_l(
    bg: &Background,
    eq: Equation,
    f: impl Fn([HD; 4]) -> Complex<HD>,
    p: &ChartPoint,
) -> Result<C64> {
    p.validate(bg)?;
    let jet = field_jet(f, p.coords());
    Ok(l_operator(bg, eq, &jet, p.r, p.theta))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TeukolskyIdentity {
    /// NP Teukolsky operator applied to `Ψ₂^{2/3} Φ`.
    pub np_value: C64,
    /// `Ψ₂^{2/3} 𝐋Φ / (2Σ)`.
    pub separated_value: C64,
    pub residual: f64,
}

/// `X(f)` and `X(Y(f))` along frame derivations.
fn along(x: &FrameOp, j: &FieldJet) -> C64 {
    (0..4).map(|a| x.comps[a].v * j.g[a]).sum()
}

fn along2(x: &FrameOp, y: &FrameOp, j: &FieldJet) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for a in 0..4 {
        for b in 0..4 {
            s += x.comps[a].v * y.comps[b].v * j.h[a][b];
        }
        let dy = x.apply(&y.comps[a]);
        s += dy * j.g[a];
    }
    s
}

/// Compares the NP Teukolsky operator, built from the closed-form spin
/// coefficients and tetrad, with the separated operator `𝐋` on the same field.
pub fn teukolsky_operator_identity(
    bg: &Background,
    eq: Equation,
    mode: &ModeIndex,
    r_fn: &dyn Fn(HD) -> HD,
    s_fn: &dyn Fn(HD) -> HD,
    p: &ChartPoint,
) -> Result<TeukolskyIdentity> {
    p.validate(bg)?;
    let tilded = eq.is_tilded();
    let phi = separated_field(mode, r_fn, s_fn);
    let weight = |x: &[HD; 4]| {
        let (p2, p2t) = psi2_closed(bg, x[R], x[TH]);
        (if tilded { p2t } else { p2 }).powf(2.0 / 3.0)
    };
    let f = |x: [HD; 4]| phi(x) * Complex::new(weight(&x), HD::constant(0.0));
    let fj = field_jet(f, p.coords());
    let jets = np_jets(bg, p.r, p.theta);
    let sec = jets.sector(tilded);
    let s = sec.s.map(|j| j.v);
    let t = sec.t.map(|j| j.v);
    // A = (Δ − 4γ + μ) f,  B = (δ̃ − 4α + π) f.
    let a_val = along(sec.de, &fj) + (s.mu - 4.0 * s.gamma) * fj.v;
    let b_val = along(sec.dlt, &fj) + (s.pi - 4.0 * s.alpha) * fj.v;
    let d_a = along2(sec.d, sec.de, &fj)
        + (sec.d.apply(&sec.s.mu) - 4.0 * sec.d.apply(&sec.s.gamma)) * fj.v
        + (s.mu - 4.0 * s.gamma) * along(sec.d, &fj);
    let dl_b = along2(sec.dl, sec.dlt, &fj)
        + (sec.dl.apply(&sec.s.pi) - 4.0 * sec.dl.apply(&sec.s.alpha)) * fj.v
        + (s.pi - 4.0 * s.alpha) * along(sec.dl, &fj);
    let c1 = -3.0 * s.epsilon + t.epsilon - t.rho - 4.0 * s.rho;
    let c2 = -t.alpha - 3.0 * s.beta + t.pi - 4.0 * s.tau;
    let np_value = d_a + c1 * a_val - (dl_b + c2 * b_val) - 3.0 * sec.psi[2].v * fj.v;
    let phi_jet = field_jet(&phi, p.coords());
    let w = weight(&p.coords().map(HD::constant)).value;
    let sigma = bg.sigma(p.r, p.theta);
    let separated_value = l_operator(bg, eq, &phi_jet, p.r, p.theta) * (w / (2.0 * sigma));
    let residual = (np_value - separated_value).norm() / (1.0 + separated_value.norm());
    Ok(TeukolskyIdentity {
        np_value,
        separated_value,
        residual,
    })
}
