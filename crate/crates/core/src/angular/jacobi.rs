use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

use crate::Real;

/// Orthonormal polynomials for the weight `(1 − x)^a (1 + x)^b` on `[−1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiBasis {
    pub a: f64,
    pub b: f64,
    /// Recurrence `x p_n = √β_{n+1} p_{n+1} + α_n p_n + √β_n p_{n−1}`.
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    /// `∫ weight`.
    pub mass: f64,
}

impl JacobiBasis {
    /// Recurrence data for degrees `0..len`.
    pub fn new(a: f64, b: f64, len: usize) -> Self {
        let s = a + b;
        let diag = (0..len)
            .map(|n| {
                let n = n as f64;
                if n == 0.0 {
                    (b - a) / (s + 2.0)
                } else {
                    (b * b - a * a) / ((2.0 * n + s) * (2.0 * n + s + 2.0))
                }
            })
            .collect();
        // off[k] = √β_{k+1}
        let off = (1..len.max(1))
            .map(|n| {
                let n = n as f64;
                let t = 2.0 * n + s;
                let beta = if n == 1.0 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
                } else {
                    4.0 * n * (n + a) * (n + b) * (n + s) / (t * t * (t + 1.0) * (t - 1.0))
                };
                beta.sqrt()
            })
            .collect();
        let mass = ((s + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
            - ln_gamma(s + 2.0))
        .exp();
        JacobiBasis {
            a,
            b,
            diag,
            off,
            mass,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `p_0(x) .. p_{n−1}(x)`.
    pub fn eval<T: Real>(&self, x: T, n: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(T::from_f64(self.mass.sqrt().recip()));
        if n > 1 {
            out.push((x - T::from_f64(self.diag[0])) * out[0] / T::from_f64(self.off[0]));
        }
        for k in 1..n - 1 {
            let next = ((x - T::from_f64(self.diag[k])) * out[k]
                - out[k - 1].scale(self.off[k - 1]))
                / T::from_f64(self.off[k]);
            out.push(next);
        }
        out
    }

    /// `Σ c_k p_k(x)`.
    pub fn sum<T: Real>(&self, coeffs: &[f64], x: T) -> T {
        self.eval(x, coeffs.len())
            .into_iter()
            .zip(coeffs)
            .fold(T::zero(), |acc, (p, &c)| acc + p.scale(c))
    }

    /// Gauss nodes and weights from the first `n` recurrence terms (Golub–Welsch).
    pub fn gauss(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let jm = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.off[i]
            } else if j + 1 == i {
                self.off[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(jm);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                (
                    eig.eigenvalues[k],
                    self.mass * eig.eigenvectors[(0, k)].powi(2),
                )
            })
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        pairs.into_iter().unzip()
    }
}
