use serde::Serialize;

use crate::{Error, Real, Result};

/// Margin kept from chart boundaries (`r` at the inner root, `θ` at the poles).
pub const DOMAIN_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BackgroundKind {
    Kerr,
    TaubBolt,
}

/// Riemannian Kerr `(M, a)` or Taub-bolt `N` (with `M = 5N/4`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Background {
    Kerr { mass: f64, spin: f64 },
    TaubBolt { nut: f64 },
}

#[inline]
pub(crate) fn c<T: Real>(x: f64) -> T {
    T::from_f64(x)
}

impl Background {
    pub fn kerr(mass: f64, spin: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite() && spin.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Kerr needs M > 0 and finite a, got M={mass}, a={spin}"
            )));
        }
        let bg = Background::Kerr { mass, spin };
        if bg.r_plus() <= spin.abs() {
            return Err(Error::InvalidInput("r+ must exceed |a|".into()));
        }
        Ok(bg)
    }

    pub fn taub_bolt(nut: f64) -> Result<Self> {
        if !(nut > 0.0 && nut.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Taub-bolt needs N > 0, got N={nut}"
            )));
        }
        Ok(Background::TaubBolt { nut })
    }

    pub fn kind(&self) -> BackgroundKind {
        match self {
            Background::Kerr { .. } => BackgroundKind::Kerr,
            Background::TaubBolt { .. } => BackgroundKind::TaubBolt,
        }
    }

    /// `M` (Kerr) or `5N/4` (Taub-bolt).
    pub fn mass(&self) -> f64 {
        match *self {
            Background::Kerr { mass, .. } => mass,
            Background::TaubBolt { nut } => 1.25 * nut,
        }
    }

    pub fn spin(&self) -> f64 {
        match *self {
            Background::Kerr { spin, .. } => spin,
            Background::TaubBolt { .. } => 0.0,
        }
    }

    pub fn nut(&self) -> Option<f64> {
        match *self {
            Background::TaubBolt { nut } => Some(nut),
            _ => None,
        }
    }

    /// Larger root of Δ: `r₊` for Kerr, the bolt `2N` for Taub-bolt.
    pub fn r_plus(&self) -> f64 {
        match *self {
            Background::Kerr { mass, spin } => mass + mass.hypot(spin),
            Background::TaubBolt { nut } => 2.0 * nut,
        }
    }

    /// Smaller root of Δ: `r₋` for Kerr, `N/2` for Taub-bolt.
    pub fn r_minus(&self) -> f64 {
        match *self {
            Background::Kerr { mass, spin } => -spin * spin / (mass + mass.hypot(spin)),
            Background::TaubBolt { nut } => 0.5 * nut,
        }
    }

    pub fn inner_radius(&self) -> f64 {
        self.r_plus()
    }

    /// Surface gravity `κ = √(M²+a²)/(2Mr₊)` (Kerr); `1/(2N)` for the Taub-bolt bolt.
    pub fn kappa(&self) -> f64 {
        match *self {
            Background::Kerr { mass, spin } => mass.hypot(spin) / (2.0 * mass * self.r_plus()),
            Background::TaubBolt { nut } => 0.5 / nut,
        }
    }

    /// `Ω = a/(2Mr₊)` (Kerr); zero for Taub-bolt.
    pub fn omega_h(&self) -> f64 {
        match *self {
            Background::Kerr { mass, spin } => spin / (2.0 * mass * self.r_plus()),
            Background::TaubBolt { .. } => 0.0,
        }
    }

    pub fn delta<T: Real>(&self, r: T) -> T {
        match *self {
            Background::Kerr { mass, spin } => r * r - r.scale(2.0 * mass) - c(spin * spin),
            Background::TaubBolt { nut } => r * r - r.scale(2.5 * nut) + c(nut * nut),
        }
    }

    /// `Δ'(r)`.
    pub fn delta_prime<T: Real>(&self, r: T) -> T {
        match *self {
            Background::Kerr { mass, .. } => r.scale(2.0) - c(2.0 * mass),
            Background::TaubBolt { nut } => r.scale(2.0) - c(2.5 * nut),
        }
    }

    pub fn sigma<T: Real>(&self, r: T, theta: T) -> T {
        match *self {
            Background::Kerr { spin, .. } => {
                let ac = theta.cos().scale(spin);
                r * r - ac * ac
            }
            Background::TaubBolt { nut } => r * r - c(nut * nut),
        }
    }

    /// Scale for frequencies: 1 (Kerr) or `2N` (Taub-bolt).
    pub fn frequency_scale(&self) -> f64 {
        match *self {
            Background::Kerr { .. } => 1.0,
            Background::TaubBolt { nut } => 2.0 * nut,
        }
    }
}

/// Point in Boyer–Lindquist-type coordinates `(t, r, θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChartPoint {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl ChartPoint {
    pub fn new(t: f64, r: f64, theta: f64, phi: f64) -> Self {
        ChartPoint { t, r, theta, phi }
    }

    pub fn at(r: f64, theta: f64) -> Self {
        ChartPoint::new(0.0, r, theta, 0.0)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.t, self.r, self.theta, self.phi]
    }

    pub fn validate(&self, bg: &Background) -> Result<()> {
        if !self.coords().iter().all(|x| x.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        if self.r <= bg.inner_radius() + DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "r = {} not outside inner radius {}",
                self.r,
                bg.inner_radius()
            )));
        }
        if self.theta <= DOMAIN_EPS || self.theta >= std::f64::consts::PI - DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "theta = {} not interior",
                self.theta
            )));
        }
        Ok(())
    }
}

/// Reproducible points with `r ∈ (r₊ + 0.05, r₊ + 15)` and `θ ∈ (0.05, π − 0.05)`.
pub fn random_points(bg: &Background, n: usize, seed: u64) -> Vec<ChartPoint> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let r0 = bg.inner_radius();
    (0..n)
        .map(|_| {
            ChartPoint::new(
                rng.gen_range(-3.0..3.0),
                r0 + rng.gen_range(0.05..15.0),
                rng.gen_range(0.05..std::f64::consts::PI - 0.05),
                rng.gen_range(0.0..2.0 * std::f64::consts::PI),
            )
        })
        .collect()
}
