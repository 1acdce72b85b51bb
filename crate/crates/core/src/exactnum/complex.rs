use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Complex number over a scalar backend, used for evaluating transforms off the real axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPair<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> ComplexPair<S> {
    pub fn new(re: S, im: S) -> Self {
        ComplexPair { re, im }
    }

    pub fn real(re: S) -> Self {
        ComplexPair { re, im: S::zero() }
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexPair::new(self.re.clone(), -self.im.clone())
    }

    /// |z|², exact in the rational backend.
    pub fn norm_sqr(&self) -> S {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }

    pub fn scale(&self, s: &S) -> Self {
        ComplexPair::new(self.re.clone() * s, self.im.clone() * s)
    }

    /// z − x for real x.
    pub fn sub_real(&self, x: &S) -> Self {
        ComplexPair::new(self.re.clone() - x, self.im.clone())
    }

    /// 1/z; `None` at zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ComplexPair::new(self.re.clone() / &n, -self.im.clone() / &n))
    }

    /// Magnitude estimate in f64, for reporting float residuals.
    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    /// log2 |z|, robust for huge or tiny values.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * ((2.0 * (a - m)).exp2() + (2.0 * (b - m)).exp2()).log2()
    }
}

impl<S: Scalar> Add for ComplexPair<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexPair::new(self.re + o.re, self.im + o.im)
    }
}

impl<S: Scalar> Sub for ComplexPair<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexPair::new(self.re - o.re, self.im - o.im)
    }
}

impl<S: Scalar> Mul for ComplexPair<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re * &o.im + self.im * &o.re;
        ComplexPair::new(re, im)
    }
}

impl<S: Scalar> Div for ComplexPair<S> {
    type Output = Self;
    /// Panics on division by zero; callers check poles first.
    fn div(self, o: Self) -> Self {
        self * o.recip().expect("complex division by zero")
    }
}

impl<S: Scalar> Neg for ComplexPair<S> {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexPair::new(-self.re, -self.im)
    }
}

impl<S: Scalar> fmt::Display for ComplexPair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
