use crate::numerics::quad;
use crate::radial::RadialSolution;
use crate::separation::{potential_u_at, PotentialSpec};
use crate::{Error, Result};

/// A radial profile: an integrated solution, or any function returning `(R, R')`.
pub enum RadialProfile<'a> {
    Solution(&'a RadialSolution),
    Function(&'a dyn Fn(f64) -> (f64, f64)),
}

/// `∫_a^b (Δ R'² − U R²) dr`.
///
/// A solution uses the energy integral carried along its integration; a function
/// is integrated adaptively in `u = ln(r − r_inner)` to relative accuracy `tol`.
pub fn energy_functional(spec: &PotentialSpec, profile: RadialProfile<'_>, range: (f64, f64), tol: f64) -> Result<f64> {
    let bg = &spec.background;
    let r_in = bg.inner_radius();
    let (a, b) = range;
    if !(a > r_in && b >= a && b.is_finite()) {
        return Err(Error::InvalidInput(format!("range ({a}, {b}) not inside ({r_in}, inf)")));
    }
    match profile {
        RadialProfile::Solution(sol) => {
            if sol.spec != *spec {
                return Err(Error::InvalidInput("solution belongs to another problem".into()));
            }
            sol.energy_between(a, b)
        }
        RadialProfile::Function(f) => {
            let md = &spec.mode;
            let integrand = |u: f64| {
                let s = u.exp();
                let r = r_in + s;
                let (v, d) = f(r);
                let pot = potential_u_at(bg, spec.equation, md.m, md.omega, md.lambda, r);
                (bg.delta(r) * d * d - pot * v * v) * s
            };
            if a == b {
                return Ok(0.0);
            }
            quad(integrand, (a - r_in).ln(), (b - r_in).ln(), tol)
        }
    }
}
