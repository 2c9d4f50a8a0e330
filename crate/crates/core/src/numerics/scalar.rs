use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

/// Scalar type the geometric closed forms are written against.
///
/// Implemented for `f32`, `f64`, [`HyperDual`](super::HyperDual) and
/// [`TaylorSeries`](super::TaylorSeries), so one formula serves plain
/// evaluation, second derivatives and power-series expansion.
pub trait Real: Copy + Num + Neg<Output = Self> + Debug + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    /// Primal (non-infinitesimal) part as `f64`.
    fn value(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan(self) -> Self;
    fn powf(self, p: f64) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        let base = if n < 0 { Self::one() / self } else { self };
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()) * Self::from_f64(0.5)
    }

    fn sinh(self) -> Self {
        let e = self.exp();
        (e - e.recip()) * Self::from_f64(0.5)
    }

    fn tan(self) -> Self {
        self.sin() / self.cos()
    }

    fn scale(self, c: f64) -> Self {
        self * Self::from_f64(c)
    }

    fn is_finite(self) -> bool;
}

macro_rules! impl_real_float {
    ($t:ty) => {
        impl Real for $t {
            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn value(self) -> f64 {
                self as f64
            }
            #[inline]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            #[inline]
            fn exp(self) -> Self {
                <$t>::exp(self)
            }
            #[inline]
            fn ln(self) -> Self {
                <$t>::ln(self)
            }
            #[inline]
            fn sin(self) -> Self {
                <$t>::sin(self)
            }
            #[inline]
            fn cos(self) -> Self {
                <$t>::cos(self)
            }
            #[inline]
            fn atan(self) -> Self {
                <$t>::atan(self)
            }
            #[inline]
            fn powf(self, p: f64) -> Self {
                <$t>::powf(self, p as $t)
            }
            #[inline]
            fn powi(self, n: i32) -> Self {
                <$t>::powi(self, n)
            }
            #[inline]
            fn cosh(self) -> Self {
                <$t>::cosh(self)
            }
            #[inline]
            fn sinh(self) -> Self {
                <$t>::sinh(self)
            }
            #[inline]
            fn tan(self) -> Self {
                <$t>::tan(self)
            }
            #[inline]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);
