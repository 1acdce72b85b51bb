use std::ops::{Add, Mul, Neg, Sub};

use super::complex::ComplexPair;
use super::poly::Polynomial;
use super::scalar::{Rational, Scalar};
use super::sturm::{from_int_poly, int_gcd, to_int_poly};
use crate::error::{Error, Result};

/// Quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
    reduced: bool,
}

impl<S: Scalar> RationalFunction<S> {
    /// Normalizes the denominator to be monic. Does not cancel common factors.
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lc = den.lc();
        let inv = S::one() / &lc;
        let reduced = num.is_zero() || den.degree() == 0;
        let den = if num.is_zero() { Polynomial::one() } else { den.scale(&inv) };
        Ok(RationalFunction { num: num.scale(&inv), den, reduced })
    }

    pub fn from_poly(p: Polynomial<S>) -> Self {
        RationalFunction { num: p, den: Polynomial::one(), reduced: true }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at a real point; errors at a zero of the denominator.
    pub fn eval(&self, x: &S) -> Result<S> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleEvaluation);
        }
        Ok(self.num.eval(x) / &d)
    }

    pub fn eval_complex(&self, z: &ComplexPair<S>) -> Result<ComplexPair<S>> {
        let d = self.den.eval_complex(z);
        if d.is_zero() {
            return Err(Error::PoleEvaluation);
        }
        Ok(self.num.eval_complex(z) / d)
    }

    /// Polynomial part and proper remainder: `self = q + r/den`.
    pub fn split(&self) -> (Polynomial<S>, Polynomial<S>) {
        self.num.div_rem(&self.den).expect("monic denominator")
    }

    /// `deg den − deg num`: the order of vanishing at ∞ (negative for a pole there).
    pub fn order_at_infinity(&self) -> Option<isize> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.den.degree() - self.num.degree())
        }
    }

    /// Coefficients of z^{-1}, …, z^{-k} in the expansion at ∞ of the proper part.
    pub fn laurent_tail(&self, k: usize) -> Vec<S> {
        let (_, r) = self.split();
        let dd = self.den.degree() as usize;
        // r/den = Σ_{i≥1} e_i z^{-i}; match coefficients of r = den · Σ e_i z^{-i}
        let mut e: Vec<S> = Vec::with_capacity(k);
        for i in 1..=k {
            // coefficient of z^{dd-i} in r
            let mut acc = if dd >= i { r.coeff(dd - i) } else { S::zero() };
            for j in 1..i {
                // den coefficient of z^{dd-(i-j)}
                if i - j <= dd {
                    acc = acc - self.den.coeff(dd - (i - j)) * &e[j - 1];
                }
            }
            e.push(acc);
        }
        e
    }

    /// Cross-multiplied equality `a/b == c/d`.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale(&self, s: &S) -> Self {
        RationalFunction { num: self.num.scale(s), den: self.den.clone(), reduced: self.reduced && !s.is_zero() }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn to_rational(&self) -> RationalFunction<Rational> {
        RationalFunction { num: self.num.to_rational(), den: self.den.to_rational(), reduced: self.reduced }
    }

    fn combine(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        Self::new(num, den).expect("product of monic denominators is nonzero")
    }
}

impl RationalFunction<Rational> {
    /// Cancels the gcd of numerator and denominator.
    pub fn reduce(&self) -> Self {
        if self.reduced {
            return self.clone();
        }
        let g = from_int_poly(&int_gcd(&to_int_poly(&self.num), &to_int_poly(&self.den)));
        if g.degree() <= 0 {
            return RationalFunction { reduced: true, ..self.clone() };
        }
        let num = self.num.div_rem(&g).unwrap().0;
        let den = self.den.div_rem(&g).unwrap().0;
        let mut r = Self::new(num, den).unwrap();
        r.reduced = true;
        r
    }
}

impl<'a, S: Scalar> Add<&'a RationalFunction<S>> for &'a RationalFunction<S> {
    type Output = RationalFunction<S>;
    fn add(self, o: &'a RationalFunction<S>) -> RationalFunction<S> {
        if self.den == o.den {
            return RationalFunction::combine(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::combine(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a, S: Scalar> Sub<&'a RationalFunction<S>> for &'a RationalFunction<S> {
    type Output = RationalFunction<S>;
    fn sub(self, o: &'a RationalFunction<S>) -> RationalFunction<S> {
        self + &(-o)
    }
}

impl<'a, S: Scalar> Mul<&'a RationalFunction<S>> for &'a RationalFunction<S> {
    type Output = RationalFunction<S>;
    fn mul(self, o: &'a RationalFunction<S>) -> RationalFunction<S> {
        RationalFunction::combine(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<S: Scalar> Neg for &RationalFunction<S> {
    type Output = RationalFunction<S>;
    fn neg(self) -> RationalFunction<S> {
        RationalFunction { num: -&self.num, den: self.den.clone(), reduced: self.reduced }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(v.iter().map(|&c| Rational::from_i64(c)).collect())
    }

    #[test]
    fn monic_denominator_and_eval() {
        let f = RationalFunction::new(p(&[2]), p(&[0, 2])).unwrap();
        assert_eq!(f.den(), &p(&[0, 1]));
        assert_eq!(f.eval(&Rational::from_i64(4)).unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(f.eval(&Rational::from_i64(0)), Err(Error::PoleEvaluation));
        assert!(RationalFunction::new(p(&[1]), Polynomial::zero()).is_err());
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let f = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap().reduce();
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &p(&[1]));
        assert!(f.is_reduced());
    }

    #[test]
    fn laurent_tail_of_simple_pole() {
        // 1/(z-2) = z^-1 + 2 z^-2 + 4 z^-3
        let f = RationalFunction::new(p(&[1]), p(&[-2, 1])).unwrap();
        let t = f.laurent_tail(3);
        assert_eq!(t, vec![Rational::from_i64(1), Rational::from_i64(2), Rational::from_i64(4)]);
        assert_eq!(f.order_at_infinity(), Some(1));
    }

    #[test]
    fn field_ops_agree_pointwise() {
        let a = RationalFunction::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = RationalFunction::new(p(&[1]), p(&[-1, 1])).unwrap();
        let s = &(&a * &b) - &(&b - &a);
        // 1/(z(z-1)) - (1/(z-1) - 1/z) = 0
        assert!(s.is_zero() || s.reduce().is_zero());
    }
}
