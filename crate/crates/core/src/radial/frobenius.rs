use serde::Serialize;

use super::singular::indicial_oracle;
use crate::numerics::TaylorSeries;
use crate::separation::{delta_u, PotentialSpec};
use crate::{Error, Real, Result};

/// Longest supported truncation order.
pub const FROBENIUS_MAX_ORDER: usize = 40;

type Ser = TaylorSeries<f64, { FROBENIUS_MAX_ORDER + 1 }>;

/// `R = (r − r₀)^ρ Σ_{k ≤ K} c_k (r − r₀)^k` with `c₀ = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusSeries {
    pub spec: PotentialSpec,
    pub point: f64,
    pub exponent: f64,
    pub coeffs: Vec<f64>,
    pub order: usize,
}

impl FrobeniusSeries {
    /// `R` at `r > r₀` for any scalar type.
    pub fn eval_generic<T: Real>(&self, r: T) -> T {
        let s = r - T::from_f64(self.point);
        let w = self
            .coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * s + T::from_f64(c));
        if self.exponent == 0.0 {
            w
        } else {
            w * s.powf(self.exponent)
        }
    }

    /// `(R, R', R'')` at `r > r₀`.
    pub fn eval(&self, r: f64) -> Result<[f64; 3]> {
        let s = r - self.point;
        if !(s > 0.0) {
            return Err(Error::Domain(format!(
                "r = {r} not above the expansion point {}",
                self.point
            )));
        }
        let (mut w, mut w1, mut w2) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            w2 = w2 * s + 2.0 * w1;
            w1 = w1 * s + w;
            w = w * s + c;
        }
        let rho = self.exponent;
        let sp = s.powf(rho);
        let r0 = sp * w;
        let r1 = sp * (rho * w / s + w1);
        let r2 = sp * (rho * (rho - 1.0) * w / (s * s) + 2.0 * rho * w1 / s + w2);
        Ok([r0, r1, r2])
    }

    /// `(ΔR')' + UR` of the truncated series.
    pub fn residual(&self, r: f64) -> Result<f64> {
        let [r0, r1, r2] = self.eval(r)?;
        let bg = &self.spec.background;
        let md = &self.spec.mode;
        let u = delta_u(bg, self.spec.equation, md.m, md.omega, md.lambda, r) / bg.delta(r);
        Ok(bg.delta(r) * r2 + bg.delta_prime(r) * r1 + u * r0)
    }
}

/// Frobenius solution about the regular singular point `r₀` with exponent `ρ`,
/// truncated after `s^K`.
pub fn frobenius_series(
    spec: &PotentialSpec,
    r0: f64,
    rho: f64,
    order: usize,
) -> Result<FrobeniusSeries> {
    if order > FROBENIUS_MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "order {order} above {FROBENIUS_MAX_ORDER}"
        )));
    }
    let roots = indicial_oracle(spec, r0)?;
    let top = roots[0].re;
    if roots[0].im != 0.0 {
        return Err(Error::Domain("complex indicial exponents".into()));
    }
    if (rho.abs() - top).abs() > 1e-9 * (1.0 + top) {
        return Err(Error::InvalidInput(format!(
            "rho = {rho} is not an indicial root (+-{top})"
        )));
    }
    let gap = 2.0 * top;
    if rho < 0.0 && (gap - gap.round()).abs() < 1e-9 {
        return Err(Error::LogarithmicCase(format!(
            "exponents +-{top} differ by the integer {}; only the larger root is analytic",
            gap.round()
        )));
    }
    let bg = &spec.background;
    let md = &spec.mode;
    let s = Ser::variable(r0);
    // Δ(r₀ + s) = s·d(s); the equation becomes s²R'' + s·p(s)R' + q(s)R = 0.
    let d = {
        let dc = bg.delta(s).coeffs;
        let mut out = [0.0; FROBENIUS_MAX_ORDER + 1];
        out[..FROBENIUS_MAX_ORDER].copy_from_slice(&dc[1..]);
        Ser { coeffs: out }
    };
    let p = bg.delta_prime(s) / d;
    let q = delta_u(bg, spec.equation, md.m, md.omega, md.lambda, s) / (d * d);
    let mut c = vec![1.0];
    for k in 1..=order {
        let mut acc = 0.0;
        for j in 0..k {
            acc += c[j] * ((rho + j as f64) * p.coeffs[k - j] + q.coeffs[k - j]);
        }
        let kf = k as f64;
        // F(ρ + k) = (ρ + k)² − ρ² with F the indicial polynomial.
        c.push(-acc / (kf * (kf + 2.0 * rho)));
    }
    Ok(FrobeniusSeries {
        spec: *spec,
        point: r0,
        exponent: rho,
        coeffs: c,
        order,
    })
}
