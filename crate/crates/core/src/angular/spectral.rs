use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::jacobi::JacobiBasis;
use crate::separation::{angular_coefficients, AngularCoefficients, Equation, PotentialSpec};
use crate::{Background, Error, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngularSolverConfig {
    /// Number of `θ` samples stored with each eigenpair.
    pub grid: usize,
    /// Number of Jacobi basis polynomials.
    pub order: usize,
    pub count: usize,
    pub tolerance: f64,
}

impl Default for AngularSolverConfig {
    fn default() -> Self {
        AngularSolverConfig {
            grid: 64,
            order: 48,
            count: 4,
            tolerance: 1e-9,
        }
    }
}

impl AngularSolverConfig {
    pub fn with_count(self, count: usize) -> Self {
        AngularSolverConfig {
            count,
            grid: self.grid.max(4 * count),
            order: self.order.max(count + 16),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidInput(
                "eigenvalue count must be at least 1".into(),
            ));
        }
        if self.grid < 4 * self.count {
            return Err(Error::InvalidInput(format!(
                "grid {} below 4 x count {}",
                self.grid, self.count
            )));
        }
        if self.order < self.count + 4 {
            return Err(Error::InvalidInput(format!(
                "order {} too small for {} eigenvalues",
                self.order, self.count
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// `S(θ) = (1 − x)^{a/2} (1 + x)^{b/2} Σ c_k p_k(x)` with `x = cosθ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularEigenpair {
    pub lambda: f64,
    pub index: usize,
    pub background: Background,
    pub equation: Equation,
    pub m: f64,
    pub omega: f64,
    /// Endpoint exponents in `1 − x` and `1 + x`.
    pub exponents: (f64, f64),
    pub coeffs: Vec<f64>,
    pub theta: Vec<f64>,
    pub s: Vec<f64>,
    /// Galerkin residual norm of `𝐒S` in `L²(sinθ dθ)`.
    pub residual: f64,
    #[serde(skip)]
    basis: JacobiBasis,
}

impl AngularEigenpair {
    /// `S` at `x = cosθ` for any scalar type.
    pub fn eval_x<T: Real>(&self, x: T) -> T {
        let (ea, eb) = self.exponents;
        let one = T::one();
        let mut w = self.basis.sum(&self.coeffs, x);
        if ea != 0.0 {
            w = w * (one - x).powf(ea);
        }
        if eb != 0.0 {
            w = w * (one + x).powf(eb);
        }
        w
    }

    pub fn eval_theta<T: Real>(&self, theta: T) -> T {
        self.eval_x(theta.cos())
    }
}

/// Regular-singular exponents `|f(±1)|/2` at the poles.
pub fn endpoint_exponents(co: &AngularCoefficients) -> (f64, f64) {
    (0.5 * co.f_at(1.0f64).abs(), 0.5 * co.f_at(-1.0f64).abs())
}

/// `Q̃` with the `(1 − x²)` pole divided out exactly, as `q0 + q1 x + q2 x²`.
fn reduced_potential(co: &AngularCoefficients, al: f64, be: f64) -> [f64; 3] {
    // N(x) = α²(1+x)² + β²(1−x)² − f(x)², degree ≤ 4.
    let [f0, f1, f2] = co.f;
    let mut n = [0.0; 5];
    n[0] = al * al + be * be - f0 * f0;
    n[1] = 2.0 * al * al - 2.0 * be * be - 2.0 * f0 * f1;
    n[2] = al * al + be * be - f1 * f1 - 2.0 * f0 * f2;
    n[3] = -2.0 * f1 * f2;
    n[4] = -f2 * f2;
    // N = (1 − x²)(q0 + q1 x + q2 x²) + remainder; the remainder vanishes by the choice of α, β.
    let q2 = -n[4];
    let q1 = -n[3];
    let q0 = n[0];
    [q0 + co.p[0] - al - be - 2.0 * al * be, q1 + co.p[1], q2]
}

fn galerkin(basis: &JacobiBasis, q: &[f64; 3], size: usize) -> DMatrix<f64> {
    let s = basis.a + basis.b;
    let (nodes, weights) = basis.gauss(size + 3);
    let vals: Vec<Vec<f64>> = nodes.iter().map(|&x| basis.eval(x, size)).collect();
    DMatrix::from_fn(size, size, |i, j| {
        let mut v: f64 = nodes
            .iter()
            .zip(&weights)
            .zip(&vals)
            .map(|((&x, &w), p)| w * p[i] * p[j] * (q[0] + x * (q[1] + x * q[2])))
            .sum();
        if i == j {
            v -= i as f64 * (i as f64 + s + 1.0);
        }
        v
    })
}

/// Lowest `cfg.count` separation constants of `𝐒S = 0` with bounded `S` at the poles,
/// ascending, with `L²(sinθ dθ)`-normalized eigenfunctions.
pub fn angular_spectrum(
    spec: &PotentialSpec,
    cfg: &AngularSolverConfig,
) -> Result<Vec<AngularEigenpair>> {
    cfg.validate()?;
    let co = AngularCoefficients {
        lambda: 0.0,
        ..angular_coefficients(spec)
    };
    if !co.f.iter().chain(&co.p).all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("non-finite mode parameters".into()));
    }
    let (al, be) = endpoint_exponents(&co);
    let q = reduced_potential(&co, al, be);
    let n = cfg.order;
    let basis = JacobiBasis::new(2.0 * al, 2.0 * be, n + 8);
    let h = galerkin(&basis, &q, n);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let big = galerkin(&basis, &q, n + 4);
    let mut out = Vec::with_capacity(cfg.count);
    for (index, &k) in order.iter().take(cfg.count).enumerate() {
        let lambda = -eig.eigenvalues[k];
        let mut coeffs: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        // Fix the sign so that S is positive near the north pole.
        let lead = basis.sum(&coeffs, 1.0 - 1e-3);
        if lead < 0.0 {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        let mut padded = coeffs.clone();
        padded.resize(n + 4, 0.0);
        let v = nalgebra::DVector::from_vec(padded);
        let r = &big * &v + &v * lambda;
        let residual = r.norm();
        if !(residual <= cfg.tolerance * (1.0 + lambda.abs())) {
            return Err(Error::NonConvergence(residual));
        }
        let mut pair = AngularEigenpair {
            lambda,
            index,
            background: spec.background,
            equation: spec.equation,
            m: spec.mode.m,
            omega: spec.mode.omega,
            exponents: (al, be),
            coeffs,
            theta: Vec::new(),
            s: Vec::new(),
            residual,
            basis: basis.clone(),
        };
        let g = cfg.grid;
        pair.theta = (0..g)
            .map(|i| std::f64::consts::PI * (i as f64 + 0.5) / g as f64)
            .collect();
        pair.s = pair.theta.iter().map(|&t| pair.eval_theta(t)).collect();
        out.push(pair);
    }
    Ok(out)
}

/// `S(θ)` for `θ ∈ (0, π)`.
pub fn angular_eigenfunction(pair: &AngularEigenpair, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!("theta = {theta} outside (0, pi)")));
    }
    Ok(pair.eval_theta(theta))
}
