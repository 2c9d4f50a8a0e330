use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Float, FromPrimitive, Num, One, Zero};

use super::Real;

/// `value + d1·ε₁ + d2·ε₂ + cross·ε₁ε₂` with `ε₁² = ε₂² = 0`.
///
/// Seeding `d1 = d2 = 1` yields `f'` in `d1` and `f''` in `cross`;
/// seeding two different variables yields the mixed partial in `cross`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct HyperDual<F> {
    pub value: F,
    pub d1: F,
    pub d2: F,
    pub cross: F,
}

impl<F: Float> HyperDual<F> {
    pub fn new(value: F, d1: F, d2: F, cross: F) -> Self {
        HyperDual {
            value,
            d1,
            d2,
            cross,
        }
    }

    pub fn constant(value: F) -> Self {
        HyperDual::new(value, F::zero(), F::zero(), F::zero())
    }

    /// Variable seeded in both slots, for second derivatives in one variable.
    pub fn variable(value: F) -> Self {
        HyperDual::new(value, F::one(), F::one(), F::zero())
    }

    /// Apply a scalar function given its value and first two derivatives at `value`.
    #[inline]
    pub fn chain(self, f0: F, f1: F, f2: F) -> Self {
        HyperDual {
            value: f0,
            d1: f1 * self.d1,
            d2: f1 * self.d2,
            cross: f1 * self.cross + f2 * self.d1 * self.d2,
        }
    }
}

impl<F: Float> Add for HyperDual<F> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        HyperDual::new(
            self.value + o.value,
            self.d1 + o.d1,
            self.d2 + o.d2,
            self.cross + o.cross,
        )
    }
}

impl<F: Float> Sub for HyperDual<F> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        HyperDual::new(
            self.value - o.value,
            self.d1 - o.d1,
            self.d2 - o.d2,
            self.cross - o.cross,
        )
    }
}

impl<F: Float> Mul for HyperDual<F> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        HyperDual::new(
            self.value * o.value,
            self.value * o.d1 + self.d1 * o.value,
            self.value * o.d2 + self.d2 * o.value,
            self.value * o.cross + self.d1 * o.d2 + self.d2 * o.d1 + self.cross * o.value,
        )
    }
}

impl<F: Float> Div for HyperDual<F> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.value.recip();
        self * o.chain(inv, -inv * inv, (inv + inv) * inv * inv)
    }
}

impl<F: Float> Rem for HyperDual<F> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        let q = (self.value / o.value).trunc();
        self - o * HyperDual::constant(q)
    }
}

impl<F: Float> Neg for HyperDual<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        HyperDual::new(-self.value, -self.d1, -self.d2, -self.cross)
    }
}

impl<F: Float> Zero for HyperDual<F> {
    fn zero() -> Self {
        HyperDual::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.d1.is_zero() && self.d2.is_zero() && self.cross.is_zero()
    }
}

impl<F: Float> One for HyperDual<F> {
    fn one() -> Self {
        HyperDual::constant(F::one())
    }
}

impl<F: Float> Num for HyperDual<F> {
    type FromStrRadixErr = F::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        F::from_str_radix(s, radix).map(HyperDual::constant)
    }
}

impl<F> Real for HyperDual<F>
where
    F: Float + FromPrimitive + Debug + Send + Sync + 'static,
{
    fn from_f64(x: f64) -> Self {
        HyperDual::constant(F::from_f64(x).unwrap())
    }

    fn value(self) -> f64 {
        self.value.to_f64().unwrap()
    }

    fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        let half = F::from_f64(0.5).unwrap();
        let d = half / s;
        self.chain(s, d, -d * half / self.value)
    }

    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    fn ln(self) -> Self {
        let inv = self.value.recip();
        self.chain(self.value.ln(), inv, -inv * inv)
    }

    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    fn atan(self) -> Self {
        let x = self.value;
        let q = (F::one() + x * x).recip();
        self.chain(x.atan(), q, -(x + x) * q * q)
    }

    fn powf(self, p: f64) -> Self {
        let pf = F::from_f64(p).unwrap();
        let x = self.value;
        let f0 = x.powf(pf);
        let f1 = pf * x.powf(pf - F::one());
        let f2 = pf * (pf - F::one()) * x.powf(pf - F::one() - F::one());
        self.chain(f0, f1, f2)
    }

    fn powi(self, n: i32) -> Self {
        let x = self.value;
        let nf = F::from_i32(n).unwrap();
        let f0 = x.powi(n);
        let f1 = if n == 0 {
            F::zero()
        } else {
            nf * x.powi(n - 1)
        };
        let f2 = if n == 0 || n == 1 {
            F::zero()
        } else {
            nf * (nf - F::one()) * x.powi(n - 2)
        };
        self.chain(f0, f1, f2)
    }

    fn is_finite(self) -> bool {
        self.value.is_finite()
            && self.d1.is_finite()
            && self.d2.is_finite()
            && self.cross.is_finite()
    }
}

/// Value, first and second derivative of `f` at `x`.
pub fn derive2<F>(f: F, x: f64) -> Result<(f64, f64, f64), crate::Error>
where
    F: Fn(HyperDual<f64>) -> HyperDual<f64>,
{
    let y = f(HyperDual::variable(x));
    if !Real::is_finite(y) {
        return Err(crate::Error::Domain(format!(
            "function not finite at x = {x}"
        )));
    }
    Ok((y.value, y.d1, y.cross))
}

/// Value, gradient and Hessian of a function of `N` variables, one
/// hyper-dual sweep per unordered pair of indices.
pub fn hessian<const N: usize, G>(f: G, x: [f64; N]) -> (f64, [f64; N], [[f64; N]; N])
where
    G: Fn([HyperDual<f64>; N]) -> HyperDual<f64>,
{
    let mut grad = [0.0; N];
    let mut hess = [[0.0; N]; N];
    let mut value = 0.0;
    for i in 0..N {
        for j in i..N {
            let mut args = x.map(HyperDual::constant);
            args[i].d1 = 1.0;
            args[j].d2 = 1.0;
            let y = f(args);
            value = y.value;
            if i == j {
                grad[i] = y.d1;
            }
            hess[i][j] = y.cross;
            hess[j][i] = y.cross;
        }
    }
    (value, grad, hess)
}

/// Value and gradient in two variables: `d1` seeds `x[0]`, `d2` seeds `x[1]`.
pub fn jet2<G, T>(f: G, x: [f64; 2]) -> T
where
    G: Fn(HyperDual<f64>, HyperDual<f64>) -> T,
{
    let a = HyperDual::new(x[0], 1.0, 0.0, 0.0);
    let b = HyperDual::new(x[1], 0.0, 1.0, 0.0);
    f(a, b)
}
