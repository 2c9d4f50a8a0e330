use num_complex::Complex;

use super::types::{SpinCoefficientSet, SpinCoeffs, WeylScalarSet};
use crate::geometry::{c, Background, ChartPoint};
use crate::{Real, Result};

/// Closed-form spin coefficients for the Carter (Kerr) and adapted Taub-bolt tetrads.
pub fn spin_coeffs_closed_at<S: Real>(
    bg: &Background,
    r: S,
    theta: S,
) -> SpinCoefficientSet<Complex<S>> {
    let zero = Complex::new(S::zero(), S::zero());
    let re = |x: S| Complex::new(x, S::zero());
    let im = |x: S| Complex::new(S::zero(), x);
    let delta = bg.delta(r);
    let sigma = bg.sigma(r, theta);
    let (st, ct) = (theta.sin(), theta.cos());
    let s2s = sigma.scale(2.0).sqrt();
    let s2ds = (delta * sigma).scale(2.0).sqrt();
    let root = (delta / sigma.scale(2.0)).sqrt();
    let mut plain = SpinCoeffs::splat(zero);
    let mut tilded = SpinCoeffs::splat(zero);
    match *bg {
        Background::Kerr { mass, spin: a } => {
            // Sector with denominator r ∓ a cosθ; `sgn = +1` is the untilded one.
            let sector = |sgn: f64, out: &mut SpinCoeffs<Complex<S>>| {
                let q = r - ct.scale(sgn * a);
                let ab = if sgn > 0.0 {
                    r * ct - c(a)
                } else {
                    -(r * ct + c(a))
                };
                let alpha = re(ab / (q * s2s.scale(2.0) * st));
                let gamma = im((-delta / q + r - c(mass)) / s2ds.scale(2.0));
                let rho = im(-root / q);
                let pi = re(-st.scale(a) / (q * s2s));
                out.alpha = alpha;
                out.beta = alpha;
                out.gamma = gamma;
                out.epsilon = gamma;
                out.mu = rho;
                out.rho = rho;
                out.pi = pi;
                out.tau = pi;
            };
            sector(1.0, &mut plain);
            sector(-1.0, &mut tilded);
        }
        Background::TaubBolt { nut: n } => {
            let rp = r + c(n);
            let rm = r - c(n);
            let alpha = re(rp * rp.scale(n) / (sigma.scale(8.0) * s2ds));
            let gamma = im(ct / (st * s2s.scale(2.0)));
            let pi = re(-rp * root / sigma);
            plain.alpha = alpha;
            plain.beta = alpha;
            plain.gamma = gamma;
            plain.epsilon = gamma;
            plain.pi = pi;
            plain.tau = pi;
            let alpha_t = re(-rm.scale(9.0 * n) / (rp.scale(8.0) * s2ds));
            let pi_t = re(root / rp);
            tilded.alpha = alpha_t;
            tilded.beta = alpha_t;
            tilded.gamma = gamma;
            tilded.epsilon = gamma;
            tilded.pi = pi_t;
            tilded.tau = pi_t;
        }
    }
    SpinCoefficientSet { plain, tilded }
}

pub fn spin_coeffs_closed(
    bg: &Background,
    p: &ChartPoint,
) -> Result<SpinCoefficientSet<Complex<f64>>> {
    p.validate(bg)?;
    Ok(spin_coeffs_closed_at(bg, p.r, p.theta))
}

/// `Ψ₂` and `Ψ̃₂` in closed form; all other scalars vanish for the adapted tetrads.
pub fn psi2_closed<S: Real>(bg: &Background, r: S, theta: S) -> (S, S) {
    match *bg {
        Background::Kerr { mass, spin: a } => {
            let ac = theta.cos().scale(a);
            (
                c::<S>(mass) / (r - ac).powi(3),
                c::<S>(mass) / (r + ac).powi(3),
            )
        }
        Background::TaubBolt { nut: n } => (
            c::<S>(0.25 * n) / (r - c(n)).powi(3),
            c::<S>(2.25 * n) / (r + c(n)).powi(3),
        ),
    }
}

pub fn weyl_scalars_closed_at<S: Real>(
    bg: &Background,
    r: S,
    theta: S,
) -> WeylScalarSet<Complex<S>> {
    let zero = Complex::new(S::zero(), S::zero());
    let (p2, p2t) = psi2_closed(bg, r, theta);
    let mut psi = [zero; 5];
    let mut psi_tilde = [zero; 5];
    psi[2] = Complex::new(p2, S::zero());
    psi_tilde[2] = Complex::new(p2t, S::zero());
    WeylScalarSet { psi, psi_tilde }
}

pub fn weyl_scalars_closed(bg: &Background, p: &ChartPoint) -> Result<WeylScalarSet<Complex<f64>>> {
    p.validate(bg)?;
    Ok(weyl_scalars_closed_at(bg, p.r, p.theta))
}
