use serde::Serialize;

use crate::numerics::TaylorSeries;
use crate::separation::{delta_u, Equation, PotentialSpec};
use crate::{Background, Error, Real, Result};

const LK: usize = 16;
type Ser = TaylorSeries<f64, LK>;

/// Expansions `Δ'/Δ = Σ p_k r^{−k}` and `U/Δ = Σ q_k r^{−k}` about `r = ∞`.
#[derive(Clone, Debug)]
pub(crate) struct InfinityExpansion {
    pub p: [f64; LK],
    pub q: [f64; LK],
}

fn reversed(c: &[f64; LK], degree: usize) -> Ser {
    let mut out = [0.0; LK];
    for k in 0..=degree {
        out[k] = c[degree - k];
    }
    Ser { coeffs: out }
}

impl InfinityExpansion {
    pub fn new(spec: &PotentialSpec) -> Self {
        let bg = &spec.background;
        let md = &spec.mode;
        let r = Ser::variable(0.0);
        // ΔU = P/den with polynomial P of degree ≤ 4 + deg(den).
        let (den, den_degree) = match *bg {
            Background::Kerr { .. } => (Ser::constant(1.0), 0),
            Background::TaubBolt { nut } => {
                let shift = if spec.equation == Equation::Plain {
                    -nut
                } else {
                    nut
                };
                let f = r + Ser::constant(shift);
                (f * f, 2)
            }
        };
        let poly = (delta_u(bg, spec.equation, md.m, md.omega, md.lambda, r) * den).coeffs;
        let degree = 4 + den_degree;
        let dc = bg.delta(r).coeffs;
        // In t = 1/r: Δ = r² δ(t), Δ' = r (2 + d₁t).
        let delta_t = reversed(&dc, 2);
        let num = reversed(&poly, degree);
        let den_t = reversed(&den.coeffs, den_degree);
        let q = num / (den_t * delta_t * delta_t);
        let mut lin = [0.0; LK];
        lin[1] = 2.0;
        lin[2] = dc[1];
        let p = Ser { coeffs: lin } / delta_t;
        InfinityExpansion {
            p: p.coeffs,
            q: q.coeffs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Decaying,
    Growing,
}

/// Normal solution `R ~ e^{rate·r} r^{power} (1 + a₁/r + a₂/r² + …)` at `r = ∞`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticSolution {
    pub spec: PotentialSpec,
    pub branch: Branch,
    pub rate: f64,
    pub power: f64,
    /// The closed-form power quoted for the untilded equation, where one is quoted.
    pub paper_power: Option<f64>,
    /// `a₁, a₂`.
    pub corrections: [f64; 2],
}

impl AsymptoticSolution {
    pub fn eval_generic<T: Real>(&self, r: T) -> T {
        let [a1, a2] = self.corrections;
        let t = r.recip();
        let w = T::one() + t.scale(a1) + (t * t).scale(a2);
        (r.scale(self.rate) + r.ln().scale(self.power)).exp() * w
    }

    /// `(R, dR/dr)` from the truncated normal series.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let [a1, a2] = self.corrections;
        let base = (self.rate * r + self.power * r.ln()).exp();
        let w = 1.0 + a1 / r + a2 / (r * r);
        let dw = -a1 / (r * r) - 2.0 * a2 / (r * r * r);
        let val = base * w;
        (val, val * (self.rate + self.power / r) + base * dw)
    }
}

fn quoted_power(spec: &PotentialSpec, sign: f64) -> Option<f64> {
    let w = spec.mode.omega;
    match spec.background {
        Background::Kerr { mass, .. } => Some(-1.0 + sign * 2.0 * (mass * w - 1.0)),
        Background::TaubBolt { .. } if spec.equation == Equation::Plain => {
            Some(-1.0 + sign * (1.25 * w - 2.0))
        }
        Background::TaubBolt { .. } => None,
    }
}

/// The normal solution on the requested branch; the decaying branch is the one
/// with negative rate.
pub fn asymptotic_normal_solution(
    spec: &PotentialSpec,
    branch: Branch,
) -> Result<AsymptoticSolution> {
    let w = spec.mode.omega;
    if w == 0.0 || !w.is_finite() {
        return Err(Error::InvalidInput(
            "omega = 0: infinity is regular, use infinity_exponents".into(),
        ));
    }
    let e = InfinityExpansion::new(spec);
    let (p, q) = (&e.p, &e.q);
    if !(q[0] < 0.0) {
        return Err(Error::Domain(format!(
            "leading coefficient {} of U/Delta is not negative",
            q[0]
        )));
    }
    let mag = (-q[0]).sqrt();
    let lam = if branch == Branch::Decaying {
        -mag
    } else {
        mag
    };
    let g = |k: usize| lam * p[k] + q[k];
    let mu = -g(1) / (2.0 * lam);
    let mut a = vec![1.0];
    for n in 1..=2 {
        let nf = n as f64;
        let mut rest = (mu - nf + 1.0) * (mu - nf) * a[n - 1];
        for k in 1..=n {
            rest += p[k] * (mu - nf + k as f64) * a[n - k];
        }
        for k in 2..=n + 1 {
            rest += g(k) * a[n + 1 - k];
        }
        a.push(rest / (2.0 * lam * nf));
    }
    // The quoted rate is ±ω (scaled); its sign relative to ω selects the quoted power.
    let sign = if lam * w > 0.0 { 1.0 } else { -1.0 };
    Ok(AsymptoticSolution {
        spec: *spec,
        branch,
        rate: lam,
        power: mu,
        paper_power: quoted_power(spec, sign),
        corrections: [a[1], a[2]],
    })
}

/// Leading tail `q = q∞₀ + q∞₁/r + O(r⁻²)` of the Liouville potential.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiouvilleTail {
    pub q0: f64,
    pub q1: f64,
}

/// `q(r) = U/Δ + ((r₊ − r₋)/(2Δ))²`, the potential of `y'' + qy = 0` for `y = √Δ R`.
pub fn liouville_q(spec: &PotentialSpec, r: f64) -> Result<f64> {
    let bg = &spec.background;
    if !(r > bg.inner_radius()) {
        return Err(Error::Domain(format!(
            "r = {r} not outside the inner singular point"
        )));
    }
    let md = &spec.mode;
    let d = bg.delta(r);
    let gap = bg.r_plus() - bg.r_minus();
    Ok(
        delta_u(bg, spec.equation, md.m, md.omega, md.lambda, r) / (d * d)
            + (gap / (2.0 * d)).powi(2),
    )
}

pub fn liouville_tail(spec: &PotentialSpec) -> LiouvilleTail {
    let e = InfinityExpansion::new(spec);
    LiouvilleTail {
        q0: e.q[0],
        q1: e.q[1],
    }
}

/// Longest series about the regular point at infinity; limited by the stored expansion.
pub const INFINITY_SERIES_MAX_ORDER: usize = LK - 3;

/// `R = r^s Σ_{n ≤ K} a_n r^{−n}` with `a₀ = 1`, about `r = ∞` for `ω = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfinitySeries {
    pub spec: PotentialSpec,
    pub exponent: f64,
    pub coeffs: Vec<f64>,
    pub order: usize,
}

impl InfinitySeries {
    /// `(R, R')`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let s = self.exponent;
        let (mut v, mut d) = (0.0, 0.0);
        for (n, &a) in self.coeffs.iter().enumerate() {
            let e = s - n as f64;
            let t = a * r.powf(e);
            v += t;
            d += e * t / r;
        }
        (v, d)
    }

    /// `(ΔR')' + UR` of the truncated series.
    pub fn residual(&self, r: f64) -> f64 {
        let s = self.exponent;
        let mut d2 = 0.0;
        for (n, &a) in self.coeffs.iter().enumerate() {
            let e = s - n as f64;
            d2 += e * (e - 1.0) * a * r.powf(e - 2.0);
        }
        let (v, d) = self.eval(r);
        let bg = &self.spec.background;
        let md = &self.spec.mode;
        let u = delta_u(bg, self.spec.equation, md.m, md.omega, md.lambda, r) / bg.delta(r);
        bg.delta(r) * d2 + bg.delta_prime(r) * d + u * v
    }
}

/// The series solution about the regular point at infinity with exponent `s`,
/// a root of `s(s − 1) + p₁s + q₂ = 0`.
pub fn infinity_series(spec: &PotentialSpec, s: f64, order: usize) -> Result<InfinitySeries> {
    if spec.mode.omega != 0.0 {
        return Err(Error::InvalidInput("infinity is irregular for omega != 0".into()));
    }
    if order > INFINITY_SERIES_MAX_ORDER {
        return Err(Error::InvalidInput(format!("order {order} above {INFINITY_SERIES_MAX_ORDER}")));
    }
    let e = InfinityExpansion::new(spec);
    let (p, q) = (&e.p, &e.q);
    let indicial = |x: f64| x * (x - 1.0) + p[1] * x + q[2];
    let b = p[1] - 1.0;
    let disc = b * b - 4.0 * q[2];
    if disc < 0.0 {
        return Err(Error::Domain("complex exponents at infinity".into()));
    }
    let (hi, lo) = ((disc.sqrt() - b) / 2.0, (-disc.sqrt() - b) / 2.0);
    if (s - hi).abs().min((s - lo).abs()) > 1e-9 * (1.0 + s.abs()) {
        return Err(Error::InvalidInput(format!("s = {s} is not a root ({hi}, {lo})")));
    }
    let gap = hi - lo;
    // In 1/r the larger exponent is −lo, so only s = hi can meet a resonance.
    if (s - hi).abs() < (s - lo).abs() && gap > 0.5 && (gap - gap.round()).abs() < 1e-9 {
        return Err(Error::LogarithmicCase(format!(
            "exponents at infinity differ by the integer {}",
            gap.round()
        )));
    }
    let mut a = vec![1.0];
    for n in 1..=order {
        let mut rest = 0.0;
        for k in 2..=n + 1 {
            rest += p[k] * a[n + 1 - k] * (s - n as f64 - 1.0 + k as f64);
        }
        for k in 3..=n + 2 {
            rest += q[k] * a[n + 2 - k];
        }
        a.push(-rest / indicial(s - n as f64));
    }
    Ok(InfinitySeries { spec: *spec, exponent: s, coeffs: a, order })
}
