use num_traits::{Float, FromPrimitive};

use crate::Error;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 2000;

fn gk15<F: Float + FromPrimitive, G: Fn(F) -> F>(f: &G, a: F, b: F) -> (F, F) {
    let c = |v: f64| F::from_f64(v).unwrap();
    let center = (a + b) * c(0.5);
    let half = (b - a) * c(0.5);
    let fc = f(center);
    let mut kron = fc * c(WGK[7]);
    let mut gauss = fc * c(WG[3]);
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let s = f(center - dx) + f(center + dx);
        kron = kron + c(WGK[j]) * s;
        if j % 2 == 1 {
            gauss = gauss + c(WG[j / 2]) * s;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod quadrature on `[a, b]`; `b` may be `+∞`, handled by
/// `r = a + e^u` with the `u` range truncated where the integrand is negligible.
///
/// Targets `|result − exact| ≤ tol·(1 + |result|)`.
pub fn quad<F, G>(f: G, a: F, b: F, tol: F) -> Result<F, Error>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    if b.is_infinite() && b > F::zero() {
        return quad_semi_infinite(f, a, tol);
    }
    adaptive(&f, a, b, tol)
}

fn adaptive<F, G>(f: &G, a: F, b: F, tol: F) -> Result<F, Error>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let mut parts = vec![(a, b, gk15(f, a, b))];
    loop {
        let total: F = parts.iter().fold(F::zero(), |s, p| s + p.2 .0);
        let err: F = parts.iter().fold(F::zero(), |s, p| s + p.2 .1);
        if !total.is_finite() {
            return Err(Error::Quadrature("integrand not finite".into()));
        }
        if err <= tol * (F::one() + total.abs()) {
            return Ok(total);
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "no convergence after {MAX_INTERVALS} subintervals, error estimate {:e}",
                err.to_f64().unwrap()
            )));
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.partial_cmp(&y.1 .2 .1).unwrap())
            .unwrap();
        let (lo, hi, _) = parts.swap_remove(idx);
        let mid = (lo + hi) * F::from_f64(0.5).unwrap();
        parts.push((lo, mid, gk15(f, lo, mid)));
        parts.push((mid, hi, gk15(f, mid, hi)));
    }
}

fn quad_semi_infinite<F, G>(f: G, a: F, tol: F) -> Result<F, Error>
where
    F: Float + FromPrimitive,
    G: Fn(F) -> F,
{
    let g = |u: F| {
        let e = u.exp();
        f(a + e) * e
    };
    let floor = tol * F::from_f64(1e-3).unwrap();
    let one = F::one();
    let mut scale = F::zero();
    let mut u_lo = F::zero();
    let mut quiet = 0;
    for _ in 0..200 {
        let v = g(u_lo).abs();
        scale = scale.max(v);
        if v <= floor * (one + scale) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        u_lo = u_lo - one;
    }
    let mut u_hi = F::zero();
    quiet = 0;
    loop {
        let v = g(u_hi).abs();
        if !v.is_finite() {
            return Err(Error::Quadrature("integrand not finite on tail".into()));
        }
        scale = scale.max(v);
        if v <= floor * (one + scale) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        u_hi = u_hi + F::from_f64(0.5).unwrap();
        if u_hi > F::from_f64(700.0).unwrap() {
            return Err(Error::Quadrature(
                "integrand does not decay on [a, ∞)".into(),
            ));
        }
    }
    adaptive(&g, u_lo, u_hi, tol)
}
