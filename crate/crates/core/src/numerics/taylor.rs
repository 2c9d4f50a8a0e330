use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Float, FromPrimitive, Num, One, Zero};

use super::Real;

/// Power series `Σ c_k s^k` truncated after `K` coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TaylorSeries<F, const K: usize> {
    pub coeffs: [F; K],
}

impl<F: Float, const K: usize> TaylorSeries<F, K> {
    pub fn constant(c: F) -> Self {
        let mut coeffs = [F::zero(); K];
        coeffs[0] = c;
        TaylorSeries { coeffs }
    }

    /// The expansion variable shifted to `x0`: `x0 + s`.
    pub fn variable(x0: F) -> Self {
        let mut coeffs = [F::zero(); K];
        coeffs[0] = x0;
        if K > 1 {
            coeffs[1] = F::one();
        }
        TaylorSeries { coeffs }
    }

    pub fn eval(&self, s: F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, &c| acc * s + c)
    }

    // f(x) where f' = g(x)·x', integrated termwise with constant f0.
    fn integrate_with(self, f0: F, g: Self) -> Self {
        let dx = self.derivative();
        let prod = g * dx;
        let mut out = [F::zero(); K];
        out[0] = f0;
        for k in 1..K {
            out[k] = prod.coeffs[k - 1] / F::from(k).unwrap();
        }
        TaylorSeries { coeffs: out }
    }

    pub fn derivative(self) -> Self {
        let mut out = [F::zero(); K];
        for k in 1..K {
            out[k - 1] = self.coeffs[k] * F::from(k).unwrap();
        }
        TaylorSeries { coeffs: out }
    }
}

impl<F: Float, const K: usize> Add for TaylorSeries<F, K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for k in 0..K {
            self.coeffs[k] = self.coeffs[k] + o.coeffs[k];
        }
        self
    }
}

impl<F: Float, const K: usize> Sub for TaylorSeries<F, K> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for k in 0..K {
            self.coeffs[k] = self.coeffs[k] - o.coeffs[k];
        }
        self
    }
}

impl<F: Float, const K: usize> Mul for TaylorSeries<F, K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [F::zero(); K];
        for i in 0..K {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..K - i {
                out[i + j] = out[i + j] + self.coeffs[i] * o.coeffs[j];
            }
        }
        TaylorSeries { coeffs: out }
    }
}

impl<F: Float, const K: usize> Div for TaylorSeries<F, K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let mut q = [F::zero(); K];
        let b0 = o.coeffs[0];
        for k in 0..K {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc = acc - o.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        TaylorSeries { coeffs: q }
    }
}

impl<F: Float, const K: usize> Rem for TaylorSeries<F, K> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        let q = (self.coeffs[0] / o.coeffs[0]).trunc();
        self - o * TaylorSeries::constant(q)
    }
}

impl<F: Float, const K: usize> Neg for TaylorSeries<F, K> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl<F: Float, const K: usize> Zero for TaylorSeries<F, K> {
    fn zero() -> Self {
        TaylorSeries {
            coeffs: [F::zero(); K],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<F: Float, const K: usize> One for TaylorSeries<F, K> {
    fn one() -> Self {
        TaylorSeries::constant(F::one())
    }
}

impl<F: Float, const K: usize> Num for TaylorSeries<F, K> {
    type FromStrRadixErr = F::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        F::from_str_radix(s, radix).map(TaylorSeries::constant)
    }
}

impl<F, const K: usize> Real for TaylorSeries<F, K>
where
    F: Float + FromPrimitive + Debug + Send + Sync + 'static,
{
    fn from_f64(x: f64) -> Self {
        TaylorSeries::constant(F::from_f64(x).unwrap())
    }

    fn value(self) -> f64 {
        self.coeffs[0].to_f64().unwrap()
    }

    fn sqrt(self) -> Self {
        let mut r = [F::zero(); K];
        r[0] = self.coeffs[0].sqrt();
        let two = F::one() + F::one();
        for k in 1..K {
            let mut acc = self.coeffs[k];
            for j in 1..k {
                acc = acc - r[j] * r[k - j];
            }
            r[k] = acc / (two * r[0]);
        }
        TaylorSeries { coeffs: r }
    }

    fn exp(self) -> Self {
        let mut e = [F::zero(); K];
        e[0] = self.coeffs[0].exp();
        for k in 1..K {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc + F::from(j).unwrap() * self.coeffs[j] * e[k - j];
            }
            e[k] = acc / F::from(k).unwrap();
        }
        TaylorSeries { coeffs: e }
    }

    fn ln(self) -> Self {
        let g = Self::one() / self;
        self.integrate_with(self.coeffs[0].ln(), g)
    }

    fn sin(self) -> Self {
        sin_cos(self).0
    }

    fn cos(self) -> Self {
        sin_cos(self).1
    }

    fn atan(self) -> Self {
        let g = Self::one() / (Self::one() + self * self);
        self.integrate_with(self.coeffs[0].atan(), g)
    }

    fn powf(self, p: f64) -> Self {
        (self.ln() * Self::from_f64(p)).exp()
    }

    fn is_finite(self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

fn sin_cos<F: Float, const K: usize>(
    x: TaylorSeries<F, K>,
) -> (TaylorSeries<F, K>, TaylorSeries<F, K>) {
    let mut s = [F::zero(); K];
    let mut c = [F::zero(); K];
    s[0] = x.coeffs[0].sin();
    c[0] = x.coeffs[0].cos();
    for k in 1..K {
        let mut as_ = F::zero();
        let mut ac = F::zero();
        for j in 1..=k {
            let jx = F::from(j).unwrap() * x.coeffs[j];
            as_ = as_ + jx * c[k - j];
            ac = ac - jx * s[k - j];
        }
        let kf = F::from(k).unwrap();
        s[k] = as_ / kf;
        c[k] = ac / kf;
    }
    (TaylorSeries { coeffs: s }, TaylorSeries { coeffs: c })
}
