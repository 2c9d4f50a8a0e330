use num_traits::{Float, FromPrimitive};
use serde::Serialize;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Embedded Runge–Kutta 5(4) of Dormand and Prince, with dense output.
    DormandPrince54,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegratorConfig<F> {
    pub rel_tol: F,
    pub abs_tol: F,
    pub max_step: F,
    pub max_steps: usize,
    pub method: Method,
}

impl<F: Float + FromPrimitive> IntegratorConfig<F> {
    pub fn new(rel_tol: F, abs_tol: F) -> Result<Self, Error> {
        if !(rel_tol > F::zero() && abs_tol > F::zero()) {
            return Err(Error::InvalidInput(
                "tolerances must be strictly positive".into(),
            ));
        }
        Ok(IntegratorConfig {
            rel_tol,
            abs_tol,
            max_step: F::infinity(),
            max_steps: 1_000_000,
            method: Method::DormandPrince54,
        })
    }

    pub fn with_max_step(mut self, h: F) -> Self {
        self.max_step = h;
        self
    }

    pub fn tightened(mut self, factor: F) -> Self {
        self.rel_tol = self.rel_tol / factor;
        self.abs_tol = self.abs_tol / factor;
        self
    }
}

impl Default for IntegratorConfig<f64> {
    fn default() -> Self {
        IntegratorConfig::new(1e-10, 1e-12).unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory<F> {
    pub xs: Vec<F>,
    pub ys: Vec<Vec<F>>,
    pub x_end: F,
    pub y_end: Vec<F>,
    pub accepted: usize,
    pub rejected: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Integrate `y' = f(x, y)` from `x0` to `x1` (either direction), returning
/// dense-output values at `samples`, which must lie in the range.
pub fn ode_solve<F, S>(
    system: S,
    x0: F,
    x1: F,
    y0: &[F],
    samples: &[F],
    cfg: &IntegratorConfig<F>,
) -> Result<Trajectory<F>, Error>
where
    F: Float + FromPrimitive,
    S: Fn(F, &[F], &mut [F]),
{
    let c = |v: f64| F::from_f64(v).unwrap();
    let n = y0.len();
    let dir = if x1 >= x0 { F::one() } else { -F::one() };
    let (lo, hi) = if x1 >= x0 { (x0, x1) } else { (x1, x0) };
    let span = hi - lo;
    let slack = span * c(1e-12);
    if samples.iter().any(|&s| s < lo - slack || s > hi + slack) {
        return Err(Error::InvalidInput(
            "sample point outside integration range".into(),
        ));
    }
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| (dir * samples[a]).partial_cmp(&(dir * samples[b])).unwrap());
    let mut out_ys: Vec<Vec<F>> = vec![Vec::new(); samples.len()];
    let mut next = 0usize;

    let mut x = x0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![F::zero(); n]; 7];
    let mut tmp = vec![F::zero(); n];
    let mut ynew = vec![F::zero(); n];
    system(x, &y, &mut k[0]);

    while next < order.len() && dir * (samples[order[next]] - x0) <= F::zero() {
        out_ys[order[next]] = y.clone();
        next += 1;
    }

    let mut h = (span * c(1e-3)).min(cfg.max_step);
    if h <= F::zero() {
        return Ok(Trajectory {
            xs: samples.to_vec(),
            ys: vec![y.clone(); samples.len()],
            x_end: x,
            y_end: y,
            accepted: 0,
            rejected: 0,
        });
    }
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut last = false;

    while !last {
        if accepted + rejected > cfg.max_steps {
            return Err(Error::Integration {
                location: x.to_f64().unwrap(),
                reason: "step budget exhausted".into(),
            });
        }
        if h < x.abs().max(F::one()) * c(1e-14) {
            return Err(Error::Integration {
                location: x.to_f64().unwrap(),
                reason: "step size underflow".into(),
            });
        }
        if (x + dir * h - x1) * dir >= F::zero() {
            h = (x1 - x) * dir;
            last = true;
        }
        let hs = dir * h;

        let stage = |acc: &mut Vec<F>, coefs: &[(usize, f64)], k: &Vec<Vec<F>>| {
            for i in 0..n {
                let mut s = F::zero();
                for &(j, a) in coefs {
                    s = s + c(a) * k[j][i];
                }
                acc[i] = y[i] + hs * s;
            }
        };
        stage(&mut tmp, &[(0, A21)], &k);
        system(x + c(C2) * hs, &tmp, &mut k[1]);
        stage(&mut tmp, &[(0, A31), (1, A32)], &k);
        system(x + c(C3) * hs, &tmp, &mut k[2]);
        stage(&mut tmp, &[(0, A41), (1, A42), (2, A43)], &k);
        system(x + c(C4) * hs, &tmp, &mut k[3]);
        stage(&mut tmp, &[(0, A51), (1, A52), (2, A53), (3, A54)], &k);
        system(x + c(C5) * hs, &tmp, &mut k[4]);
        stage(
            &mut tmp,
            &[(0, A61), (1, A62), (2, A63), (3, A64), (4, A65)],
            &k,
        );
        system(x + hs, &tmp, &mut k[5]);
        stage(
            &mut ynew,
            &[(0, A71), (2, A73), (3, A74), (4, A75), (5, A76)],
            &k,
        );
        system(x + hs, &ynew, &mut k[6]);

        // Error per unit step (capped at one), for tolerance proportionality.
        let unit = h.min(F::one());
        let mut err = F::zero();
        for i in 0..n {
            let e = hs
                * (c(E1) * k[0][i]
                    + c(E3) * k[2][i]
                    + c(E4) * k[3][i]
                    + c(E5) * k[4][i]
                    + c(E6) * k[5][i]
                    + c(E7) * k[6][i]);
            let sc = (cfg.abs_tol + cfg.rel_tol * y[i].abs().max(ynew[i].abs())) * unit;
            err = err + (e / sc) * (e / sc);
        }
        err = (err / F::from_usize(n.max(1)).unwrap()).sqrt();
        if !err.is_finite() {
            rejected += 1;
            last = false;
            h = h * c(0.2);
            continue;
        }

        if err <= F::one() {
            accepted += 1;
            let xnew = x + hs;
            // Dense output between x and xnew.
            while next < order.len() && dir * (samples[order[next]] - xnew) <= slack {
                let theta = (samples[order[next]] - x) / hs;
                let th1 = F::one() - theta;
                let mut v = vec![F::zero(); n];
                for i in 0..n {
                    let r2 = ynew[i] - y[i];
                    let r3 = hs * k[0][i] - r2;
                    let r4 = r2 - hs * k[6][i] - r3;
                    let r5 = hs
                        * (c(D1) * k[0][i]
                            + c(D3) * k[2][i]
                            + c(D4) * k[3][i]
                            + c(D5) * k[4][i]
                            + c(D6) * k[5][i]
                            + c(D7) * k[6][i]);
                    v[i] = y[i] + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
                }
                out_ys[order[next]] = v;
                next += 1;
            }
            x = xnew;
            y.copy_from_slice(&ynew);
            let k6 = k[6].clone();
            k[0].copy_from_slice(&k6);
            let fac = if err == F::zero() {
                c(10.0)
            } else {
                (c(0.9) * err.powf(c(-0.2))).min(c(10.0)).max(c(0.2))
            };
            h = (h * fac).min(cfg.max_step);
        } else {
            rejected += 1;
            last = false;
            let fac = (c(0.9) * err.powf(c(-0.2))).max(c(0.2));
            h = h * fac;
        }
    }
    while next < order.len() {
        out_ys[order[next]] = y.clone();
        next += 1;
    }
    Ok(Trajectory {
        xs: samples.to_vec(),
        ys: out_ys,
        x_end: x,
        y_end: y,
        accepted,
        rejected,
    })
}
