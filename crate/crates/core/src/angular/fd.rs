use crate::separation::{angular_coefficients, AngularCoefficients, PotentialSpec};
use crate::{Error, Result};

/// Symmetric tridiagonal matrix `(diag, off)`.
struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1]
            };
            q = self.diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (self.diag[i].abs() + x.abs() + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue by Sturm bisection.
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Cell-centred second-order discretization of `−((1 − x²)S')' − (V − Λ)S` on `n`
/// cells; the flux vanishes at `x = ±1`, which selects the bounded solution.
fn assemble(co: &AngularCoefficients, n: usize) -> Tridiagonal {
    let h = 2.0 / n as f64;
    let h2 = h * h;
    let flux = |i: usize| {
        let x = -1.0 + i as f64 * h;
        1.0 - x * x
    };
    let diag = (0..n)
        .map(|i| {
            let x = -1.0 + (i as f64 + 0.5) * h;
            (flux(i) + flux(i + 1)) / h2 - co.v_reduced(x)
        })
        .collect();
    let off = (1..n).map(|i| -flux(i) / h2).collect();
    Tridiagonal { diag, off }
}

pub const FD_MIN_CELLS: usize = 200;

/// Lowest `k` separation constants from the finite-difference discretization on `n` cells.
pub fn fd_oracle_spectrum(spec: &PotentialSpec, k: usize, n: usize) -> Result<Vec<f64>> {
    if n < FD_MIN_CELLS {
        return Err(Error::InvalidInput(format!(
            "finite-difference grid needs at least {FD_MIN_CELLS} cells, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "cannot extract {k} eigenvalues from {n} cells"
        )));
    }
    let co = angular_coefficients(spec);
    let t = assemble(&co, n);
    Ok((0..k).map(|j| t.eigenvalue(j)).collect())
}

/// Richardson extrapolation of the order-2 oracle from `n` and `2n` cells.
pub fn fd_oracle_extrapolated(spec: &PotentialSpec, k: usize, n: usize) -> Result<Vec<f64>> {
    let coarse = fd_oracle_spectrum(spec, k, n)?;
    let fine = fd_oracle_spectrum(spec, k, 2 * n)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect())
}
