use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::types::{SpinCoefficientSet, SpinCoeffs, WeylScalarSet};
use crate::geometry::{
    christoffel_eval, metric_jet, tetrad_components, Background, CVec4, ChartPoint, Mat4,
};
use crate::numerics::HyperDual;
use crate::{Error, Result};

type C64 = Complex<f64>;

/// Fit residuals above this reject the extraction.
pub const EXTRACTION_REJECT: f64 = 1e-6;

fn czero() -> C64 {
    Complex::new(0.0, 0.0)
}

/// Frame `(l, l̄, m, m̄)` with `∂_r`, `∂_θ` of the lowered components.
struct FrameJet {
    up: [CVec4<f64>; 4],
    low: [CVec4<f64>; 4],
    /// `dlow[k][b][a] = ∂_b (v_k)_a`.
    dlow: [[CVec4<f64>; 4]; 4],
}

fn frame_jet(bg: &Background, r: f64, theta: f64) -> FrameJet {
    let rr = HyperDual::new(r, 1.0, 0.0, 0.0);
    let tt = HyperDual::new(theta, 0.0, 1.0, 0.0);
    let g = crate::geometry::metric_components(bg, rr, tt);
    let frame = tetrad_components(bg, rr, tt).frame();
    let mut up = [[czero(); 4]; 4];
    let mut low = [[czero(); 4]; 4];
    let mut dlow = [[[czero(); 4]; 4]; 4];
    for k in 0..4 {
        for a in 0..4 {
            up[k][a] = Complex::new(frame[k][a].re.value, frame[k][a].im.value);
            let mut s = Complex::new(HyperDual::constant(0.0), HyperDual::constant(0.0));
            for b in 0..4 {
                s = s + frame[k][b] * g[a][b];
            }
            low[k][a] = Complex::new(s.re.value, s.im.value);
            dlow[k][1][a] = Complex::new(s.re.d1, s.im.d1);
            dlow[k][2][a] = Complex::new(s.re.d2, s.im.d2);
        }
    }
    FrameJet { up, low, dlow }
}

/// `(∇_b v_a)` for each frame vector, indexed `[k][b][a]`.
fn covariant_derivatives(fj: &FrameJet, gamma: &[Mat4<f64>; 4]) -> [[CVec4<f64>; 4]; 4] {
    let mut out = [[[czero(); 4]; 4]; 4];
    for k in 0..4 {
        for b in 0..4 {
            for a in 0..4 {
                let mut v = fj.dlow[k][b][a];
                for cc in 0..4 {
                    v -= fj.low[k][cc] * gamma[cc][b][a];
                }
                out[k][b][a] = v;
            }
        }
    }
    out
}

/// Extract all 24 spin coefficients from the covariant derivatives of the
/// tetrad by least squares against the co-basis `(l♭, l̄♭, m♭, m̄♭)`, with the
/// conjugation relations appended as extra equations.
///
/// Returns the set and the relative fit residual.
pub fn spin_coeffs_numeric_with_residual(
    bg: &Background,
    p: &ChartPoint,
) -> Result<(SpinCoefficientSet<C64>, f64)> {
    p.validate(bg)?;
    let ch = christoffel_eval(bg, p)?;
    let fj = frame_jet(bg, p.r, p.theta);
    let nab = covariant_derivatives(&fj, &ch.gamma);
    let (l, lb, m, mb) = (0, 1, 2, 3);
    // w_b = X^a ∇_b Y_a
    let contract = |x: usize, y: usize| -> CVec4<f64> {
        std::array::from_fn(|b| (0..4).map(|a| fj.up[x][a] * nab[y][b][a]).sum())
    };
    let half = |u: CVec4<f64>, v: CVec4<f64>| -> CVec4<f64> {
        std::array::from_fn(|b| (u[b] - v[b]) * 0.5)
    };
    let forms = [
        half(contract(lb, l), contract(m, mb)),
        contract(lb, mb),
        contract(m, l),
        half(contract(lb, l), contract(mb, m)),
        contract(lb, m),
        contract(mb, l),
    ];
    // Form k evaluated on (l, l̄, m, m̄) equals sign·coefficient; entries are
    // (coefficient index in 0..24, sign).
    const A: usize = 0;
    const B: usize = 1;
    const G: usize = 2;
    const E: usize = 3;
    const K: usize = 4;
    const L: usize = 5;
    const MU: usize = 6;
    const NU: usize = 7;
    const PI: usize = 8;
    const RHO: usize = 9;
    const S: usize = 10;
    const TAU: usize = 11;
    let t = |i: usize| i + 12;
    let table: [[(usize, f64); 4]; 6] = [
        [(E, 1.0), (G, 1.0), (B, 1.0), (A, -1.0)],
        [(PI, -1.0), (NU, -1.0), (MU, -1.0), (L, 1.0)],
        [(K, 1.0), (TAU, 1.0), (S, 1.0), (RHO, -1.0)],
        [(t(E), 1.0), (t(G), 1.0), (t(A), 1.0), (t(B), -1.0)],
        [(t(PI), 1.0), (t(NU), 1.0), (t(L), 1.0), (t(MU), -1.0)],
        [(t(K), -1.0), (t(TAU), -1.0), (t(RHO), -1.0), (t(S), 1.0)],
    ];
    // Dual co-vector of each frame slot: w = w(l) l̄♭ + w(l̄) l♭ + w(m) m̄♭ + w(m̄) m♭.
    let dual = [lb, l, mb, m];
    // Unknowns: 24 complex → 48 real (re, im interleaved).
    let rows = 6 * 8 + 24;
    let mut mat = DMatrix::<f64>::zeros(rows, 48);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (k, form) in forms.iter().enumerate() {
        for b in 0..4 {
            let row = k * 8 + 2 * b;
            rhs[row] = form[b].re;
            rhs[row + 1] = form[b].im;
            for slot in 0..4 {
                let (idx, sign) = table[k][slot];
                let co = fj.low[dual[slot]][b] * sign;
                // (x + iy)(cr + i ci) = (x cr − y ci) + i(x ci + y cr)
                mat[(row, 2 * idx)] += co.re;
                mat[(row, 2 * idx + 1)] -= co.im;
                mat[(row + 1, 2 * idx)] += co.im;
                mat[(row + 1, 2 * idx + 1)] += co.re;
            }
        }
    }
    // ᾱ=β, γ̄=−ε, κ̄=ν, λ̄=−σ, μ̄=−ρ, π̄=τ for both sectors.
    let pairs = [
        (A, B, 1.0),
        (G, E, -1.0),
        (K, NU, 1.0),
        (L, S, -1.0),
        (MU, RHO, -1.0),
        (PI, TAU, 1.0),
    ];
    let mut row = 48;
    for sector in 0..2 {
        for &(x, y, s) in &pairs {
            let (x, y) = (x + 12 * sector, y + 12 * sector);
            // re: x_re − s y_re = 0 ; im: −x_im − s y_im = 0
            mat[(row, 2 * x)] = 1.0;
            mat[(row, 2 * y)] = -s;
            mat[(row + 1, 2 * x + 1)] = -1.0;
            mat[(row + 1, 2 * y + 1)] = -s;
            row += 2;
        }
    }
    let svd = mat.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Domain(e.into()))?;
    let resid = (&mat * &sol - &rhs).norm() / (1.0 + rhs.norm());
    if !(resid <= EXTRACTION_REJECT) {
        return Err(Error::Extraction(resid));
    }
    let z: Vec<C64> = (0..24)
        .map(|i| Complex::new(sol[2 * i], sol[2 * i + 1]))
        .collect();
    let plain = SpinCoeffs::from_array(std::array::from_fn(|i| z[i]));
    let tilded = SpinCoeffs::from_array(std::array::from_fn(|i| z[i + 12]));
    Ok((SpinCoefficientSet { plain, tilded }, resid))
}

pub fn spin_coeffs_numeric(bg: &Background, p: &ChartPoint) -> Result<SpinCoefficientSet<C64>> {
    spin_coeffs_numeric_with_residual(bg, p).map(|x| x.0)
}

/// Fully lowered curvature in the sign convention of the Weyl scalar
/// definitions (`W = −R` with `R^a_{bcd} = ∂_c Γ^a_{db} − …`).
pub fn weyl_tensor(bg: &Background, p: &ChartPoint) -> Result<[[Mat4<f64>; 4]; 4]> {
    p.validate(bg)?;
    let jet = metric_jet(bg, p.r, p.theta)?;
    let ch = christoffel_eval(bg, p)?;
    let gam = &ch.gamma;
    let g = &jet.g;
    let dd = &jet.ddg;
    let mut w = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    let mut v = 0.5
                        * (dd[b][cc][a][d] + dd[a][d][b][cc] - dd[b][d][a][cc] - dd[a][cc][b][d]);
                    for e in 0..4 {
                        for f in 0..4 {
                            v += g[e][f]
                                * (gam[e][b][cc] * gam[f][a][d] - gam[e][b][d] * gam[f][a][cc]);
                        }
                    }
                    w[a][b][cc][d] = -v;
                }
            }
        }
    }
    Ok(w)
}

fn contract4(
    w: &[[Mat4<f64>; 4]; 4],
    x: &CVec4<f64>,
    y: &CVec4<f64>,
    z: &CVec4<f64>,
    u: &CVec4<f64>,
) -> C64 {
    let mut s = czero();
    for a in 0..4 {
        for b in 0..4 {
            let xy = x[a] * y[b];
            for cc in 0..4 {
                let xyz = xy * z[cc];
                for d in 0..4 {
                    if w[a][b][cc][d] != 0.0 {
                        s += xyz * u[d] * w[a][b][cc][d];
                    }
                }
            }
        }
    }
    s
}

/// Weyl scalars from two hyper-dual metric derivatives contracted with the tetrad.
pub fn weyl_scalars_numeric(bg: &Background, p: &ChartPoint) -> Result<WeylScalarSet<C64>> {
    let w = weyl_tensor(bg, p)?;
    let [l, lb, m, mb] = tetrad_components(bg, p.r, p.theta).frame();
    let psi = [
        -contract4(&w, &l, &m, &l, &m),
        -contract4(&w, &l, &lb, &l, &m),
        contract4(&w, &l, &m, &lb, &mb),
        contract4(&w, &l, &lb, &lb, &mb),
        -contract4(&w, &lb, &mb, &lb, &mb),
    ];
    let psi_tilde = [
        -contract4(&w, &l, &mb, &l, &mb),
        -contract4(&w, &l, &lb, &l, &mb),
        contract4(&w, &l, &mb, &lb, &m),
        contract4(&w, &l, &lb, &lb, &m),
        -contract4(&w, &lb, &m, &lb, &m),
    ];
    Ok(WeylScalarSet { psi, psi_tilde })
}
