use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex;
use serde::Serialize;

use super::background::{c, Background, ChartPoint};
use crate::numerics::HyperDual;
use crate::{Error, Real, Result};

pub type Mat4<T> = [[T; 4]; 4];
pub type CVec4<T> = [Complex<T>; 4];

/// Coordinate order used throughout: `(t, r, θ, φ)`.
pub const T: usize = 0;
pub const R: usize = 1;
pub const TH: usize = 2;
pub const PH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricComponents {
    pub g: Mat4<f64>,
    pub sigma: f64,
    pub delta: f64,
}

impl MetricComponents {
    pub fn min_eigenvalue(&self) -> f64 {
        let m = Matrix4::from_fn(|i, j| self.g[i][j]);
        SymmetricEigen::new(m).eigenvalues.min()
    }
}

/// Complex coordinate vectors `l`, `m`; `l̄`, `m̄` by conjugation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrad<T> {
    pub l: CVec4<T>,
    pub m: CVec4<T>,
}

impl<S: Real> Tetrad<S> {
    pub fn lbar(&self) -> CVec4<S> {
        self.l.map(|z| z.conj())
    }

    pub fn mbar(&self) -> CVec4<S> {
        self.m.map(|z| z.conj())
    }

    /// `(l, l̄, m, m̄)`.
    pub fn frame(&self) -> [CVec4<S>; 4] {
        [self.l, self.lbar(), self.m, self.mbar()]
    }
}

/// Line element components in Boyer–Lindquist-type coordinates; depend on `(r, θ)` only.
pub fn metric_components<S: Real>(bg: &Background, r: S, theta: S) -> Mat4<S> {
    let z = S::zero();
    let mut g = [[z; 4]; 4];
    let delta = bg.delta(r);
    let sigma = bg.sigma(r, theta);
    let (st, ct) = (theta.sin(), theta.cos());
    let s2 = st * st;
    match *bg {
        Background::Kerr { spin: a, .. } => {
            let p = r * r - c(a * a);
            g[T][T] = (delta + s2.scale(a * a)) / sigma;
            g[T][PH] = (p - delta).scale(a) * s2 / sigma;
            g[PH][PH] = (delta * s2.scale(a * a) + p * p) * s2 / sigma;
        }
        Background::TaubBolt { nut } => {
            let k = delta.scale(4.0 * nut * nut) / sigma;
            g[T][T] = k;
            g[T][PH] = k * ct;
            g[PH][PH] = k * ct * ct + sigma * s2;
        }
    }
    g[PH][T] = g[T][PH];
    g[R][R] = sigma / delta;
    g[TH][TH] = sigma;
    g
}

pub fn metric_eval(bg: &Background, p: &ChartPoint) -> Result<MetricComponents> {
    p.validate(bg)?;
    Ok(MetricComponents {
        g: metric_components(bg, p.r, p.theta),
        sigma: bg.sigma(p.r, p.theta),
        delta: bg.delta(p.r),
    })
}

/// Carter tetrad (Kerr) and the Taub-bolt adapted tetrad.
pub fn tetrad_components<S: Real>(bg: &Background, r: S, theta: S) -> Tetrad<S> {
    let z = Complex::new(S::zero(), S::zero());
    let re = |x: S| Complex::new(x, S::zero());
    let im = |x: S| Complex::new(S::zero(), x);
    let delta = bg.delta(r);
    let sigma = bg.sigma(r, theta);
    let (st, ct) = (theta.sin(), theta.cos());
    let two_sigma = sigma.scale(2.0);
    let mut l = [z; 4];
    let mut m = [z; 4];
    match *bg {
        Background::Kerr { spin: a, .. } => {
            let n = (delta * two_sigma).sqrt();
            l[T] = re((r * r - c(a * a)) / n);
            l[R] = im((delta / two_sigma).sqrt());
            l[PH] = re(-c::<S>(a) / n);
            let s = two_sigma.sqrt();
            m[TH] = re(s.recip());
            m[PH] = im(-(s * st).recip());
            m[T] = im(-st.scale(a) / s);
        }
        Background::TaubBolt { nut } => {
            let s = two_sigma.sqrt();
            l[T] = re(ct / (st * s));
            l[PH] = re(-(st * s).recip());
            l[TH] = im(s.recip());
            m[R] = re((delta / two_sigma).sqrt());
            m[T] = im((sigma / delta.scale(2.0)).sqrt().scale(0.5 / nut));
        }
    }
    Tetrad { l, m }
}

pub fn tetrad_eval(bg: &Background, p: &ChartPoint) -> Result<Tetrad<f64>> {
    p.validate(bg)?;
    Ok(tetrad_components(bg, p.r, p.theta))
}

/// Complex bilinear `g(X, Y)`.
pub fn inner<S: Real>(g: &Mat4<S>, x: &CVec4<S>, y: &CVec4<S>) -> Complex<S> {
    let mut acc = Complex::new(S::zero(), S::zero());
    for a in 0..4 {
        for b in 0..4 {
            acc = acc + x[a] * y[b] * g[a][b];
        }
    }
    acc
}

/// Gram matrix of `(l, l̄, m, m̄)`.
pub fn gram_matrix(bg: &Background, p: &ChartPoint) -> Result<[[Complex<f64>; 4]; 4]> {
    let g = metric_eval(bg, p)?.g;
    let f = tetrad_eval(bg, p)?.frame();
    let mut out = [[Complex::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = inner(&g, &f[i], &f[j]);
        }
    }
    Ok(out)
}

/// The constant Gram matrix: `g(l, l̄) = g(m, m̄) = 1`, all other pairings zero.
pub fn reference_gram() -> [[Complex<f64>; 4]; 4] {
    let mut out = [[Complex::new(0.0, 0.0); 4]; 4];
    out[0][1] = Complex::new(1.0, 0.0);
    out[1][0] = Complex::new(1.0, 0.0);
    out[2][3] = Complex::new(1.0, 0.0);
    out[3][2] = Complex::new(1.0, 0.0);
    out
}

/// Metric with first and second coordinate derivatives (`r`, `θ` only).
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub g: Mat4<f64>,
    /// `dg[c][a][b] = ∂_c g_ab`.
    pub dg: [Mat4<f64>; 4],
    /// `ddg[c][d][a][b] = ∂_c ∂_d g_ab`.
    pub ddg: [[Mat4<f64>; 4]; 4],
}

pub fn metric_jet(bg: &Background, r: f64, theta: f64) -> Result<MetricJet> {
    let zero = [[0.0; 4]; 4];
    let mut dg = [zero; 4];
    let mut ddg = [[zero; 4]; 4];
    let mut g = zero;
    for (ci, di) in [(R, R), (R, TH), (TH, TH)] {
        let mut rr = HyperDual::constant(r);
        let mut tt = HyperDual::constant(theta);
        if ci == R {
            rr.d1 = 1.0;
        } else {
            tt.d1 = 1.0;
        }
        if di == R {
            rr.d2 = 1.0;
        } else {
            tt.d2 = 1.0;
        }
        let h = metric_components(bg, rr, tt);
        for a in 0..4 {
            for b in 0..4 {
                let v = h[a][b];
                if !Real::is_finite(v) {
                    return Err(Error::Domain(format!(
                        "metric derivative not finite at r={r}, theta={theta}"
                    )));
                }
                g[a][b] = v.value;
                dg[ci][a][b] = v.d1;
                dg[di][a][b] = v.d2;
                ddg[ci][di][a][b] = v.cross;
                ddg[di][ci][a][b] = v.cross;
            }
        }
    }
    Ok(MetricJet { g, dg, ddg })
}

pub fn inverse(g: &Mat4<f64>) -> Result<Mat4<f64>> {
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Domain("degenerate metric".into()))?;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| inv[(i, j)])
    }))
}

/// `Γ^λ_{μν}` indexed `[λ][μ][ν]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Christoffel {
    pub gamma: [Mat4<f64>; 4],
}

/// Christoffel symbols of the first kind `Γ_{λμν}` from a metric jet.
pub fn christoffel_lower(jet: &MetricJet) -> [Mat4<f64>; 4] {
    std::array::from_fn(|l| {
        std::array::from_fn(|m| {
            std::array::from_fn(|n| 0.5 * (jet.dg[m][l][n] + jet.dg[n][l][m] - jet.dg[l][m][n]))
        })
    })
}

pub fn christoffel_eval(bg: &Background, p: &ChartPoint) -> Result<Christoffel> {
    p.validate(bg)?;
    let jet = metric_jet(bg, p.r, p.theta)?;
    let ginv = inverse(&jet.g)?;
    let low = christoffel_lower(&jet);
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for m in 0..4 {
            for n in m..4 {
                let v: f64 = (0..4).map(|k| ginv[l][k] * low[k][m][n]).sum();
                gamma[l][m][n] = v;
                gamma[l][n][m] = v;
            }
        }
    }
    Ok(Christoffel { gamma })
}

/// `∇_c g_ab` from the metric jet and Christoffel symbols; zero for Levi-Civita.
pub fn metric_compatibility_residual(bg: &Background, p: &ChartPoint) -> Result<f64> {
    let jet = metric_jet(bg, p.r, p.theta)?;
    let ch = christoffel_eval(bg, p)?;
    let mut worst = 0.0f64;
    for cc in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let mut v = jet.dg[cc][a][b];
                for e in 0..4 {
                    v -= ch.gamma[e][cc][a] * jet.g[e][b] + ch.gamma[e][cc][b] * jet.g[a][e];
                }
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}
