use num_complex::Complex;
use serde::Serialize;

/// The twelve spin coefficients of one sector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinCoeffs<C> {
    pub alpha: C,
    pub beta: C,
    pub gamma: C,
    pub epsilon: C,
    pub kappa: C,
    pub lambda: C,
    pub mu: C,
    pub nu: C,
    pub pi: C,
    pub rho: C,
    pub sigma: C,
    pub tau: C,
}

pub const SPIN_NAMES: [&str; 12] = [
    "alpha", "beta", "gamma", "epsilon", "kappa", "lambda", "mu", "nu", "pi", "rho", "sigma", "tau",
];

impl<C: Copy> SpinCoeffs<C> {
    pub fn splat(c: C) -> Self {
        SpinCoeffs::from_array([c; 12])
    }

    pub fn to_array(&self) -> [C; 12] {
        [
            self.alpha,
            self.beta,
            self.gamma,
            self.epsilon,
            self.kappa,
            self.lambda,
            self.mu,
            self.nu,
            self.pi,
            self.rho,
            self.sigma,
            self.tau,
        ]
    }

    pub fn from_array(a: [C; 12]) -> Self {
        SpinCoeffs {
            alpha: a[0],
            beta: a[1],
            gamma: a[2],
            epsilon: a[3],
            kappa: a[4],
            lambda: a[5],
            mu: a[6],
            nu: a[7],
            pi: a[8],
            rho: a[9],
            sigma: a[10],
            tau: a[11],
        }
    }

    pub fn map<D: Copy>(&self, f: impl Fn(C) -> D) -> SpinCoeffs<D> {
        SpinCoeffs::from_array(self.to_array().map(f))
    }
}

/// Untilded and tilded spin coefficients at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinCoefficientSet<C> {
    pub plain: SpinCoeffs<C>,
    pub tilded: SpinCoeffs<C>,
}

/// `Ψ₀..Ψ₄` and `Ψ̃₀..Ψ̃₄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeylScalarSet<C> {
    pub psi: [C; 5],
    pub psi_tilde: [C; 5],
}

/// The tilde involution: swap every quantity with its tilded partner.
pub trait Tilde: Sized {
    fn tilde(&self) -> Self;
}

impl<C: Copy> Tilde for SpinCoefficientSet<C> {
    fn tilde(&self) -> Self {
        SpinCoefficientSet {
            plain: self.tilded,
            tilded: self.plain,
        }
    }
}

impl<C: Copy> Tilde for WeylScalarSet<C> {
    fn tilde(&self) -> Self {
        WeylScalarSet {
            psi: self.psi_tilde,
            psi_tilde: self.psi,
        }
    }
}

pub fn tilde_map<S: Tilde>(s: &S) -> S {
    s.tilde()
}

impl SpinCoefficientSet<Complex<f64>> {
    /// Largest violation of `ᾱ=β, γ̄=−ε, κ̄=ν, λ̄=−σ, μ̄=−ρ, π̄=τ` in both sectors.
    pub fn conjugation_residual(&self) -> f64 {
        let one = |s: &SpinCoeffs<Complex<f64>>| {
            [
                (s.alpha.conj() - s.beta).norm(),
                (s.gamma.conj() + s.epsilon).norm(),
                (s.kappa.conj() - s.nu).norm(),
                (s.lambda.conj() + s.sigma).norm(),
                (s.mu.conj() + s.rho).norm(),
                (s.pi.conj() - s.tau).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        };
        one(&self.plain).max(one(&self.tilded))
    }

    pub fn max_difference(&self, other: &Self) -> f64 {
        let a = self
            .plain
            .to_array()
            .into_iter()
            .chain(self.tilded.to_array());
        let b = other
            .plain
            .to_array()
            .into_iter()
            .chain(other.tilded.to_array());
        a.zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

impl WeylScalarSet<Complex<f64>> {
    /// Largest violation of `Ψ̄_k = Ψ_{4−k}` in both sectors.
    pub fn conjugation_residual(&self) -> f64 {
        (0..5)
            .map(|k| {
                (self.psi[k].conj() - self.psi[4 - k])
                    .norm()
                    .max((self.psi_tilde[k].conj() - self.psi_tilde[4 - k]).norm())
            })
            .fold(0.0, f64::max)
    }
}
