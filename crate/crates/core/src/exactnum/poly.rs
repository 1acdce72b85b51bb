use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::complex::ComplexPair;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// Trailing zeros are never stored; the zero polynomial is empty and has degree −1.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `x − a`.
    pub fn x_minus(a: &S) -> Self {
        Self::new(vec![-a.clone(), S::one()])
    }

    pub fn monomial(c: S, k: usize) -> Self {
        let mut v = vec![S::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// Π (x − r).
    pub fn from_roots(roots: &[S]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::x_minus(r))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexPair<S>) -> ComplexPair<S> {
        let mut acc = ComplexPair::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + ComplexPair::real(c.clone());
        }
        acc
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![S::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lc = self.lc();
        Ok(Self::new(self.coeffs.iter().map(|c| c.clone() / &lc).collect()))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.degree() as usize;
        if self.degree() < d.degree() {
            return Ok((Self::zero(), self.clone()));
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![S::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - c.clone() * dj;
                }
            }
            // the leading slot is cancelled by construction
            r[i + dd] = S::zero();
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic gcd by the Euclidean algorithm. Only meaningful in the exact backend.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(|_| Self::zero())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.lc();
        let inv = S::one() / &lc;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn to_rational(&self) -> Polynomial<Rational> {
        Polynomial::new(self.coeffs.iter().map(|c| c.to_rational()).collect())
    }

    pub fn from_rational(p: &Polynomial<Rational>, prec: usize) -> Self {
        Self::new(p.coeffs.iter().map(|c| S::from_rational(c, prec)).collect())
    }

    /// Serialized form, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string_repr()).collect()
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_strings().join(", "))
    }
}

impl<'a, S: Scalar> Add<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn add(self, o: &'a Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn sub(self, o: &'a Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a Polynomial<S>> for &'a Polynomial<S> {
    type Output = Polynomial<S>;
    fn mul(self, o: &'a Polynomial<S>) -> Polynomial<S> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b;
            }
        }
        Polynomial::new(v)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;
    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}
