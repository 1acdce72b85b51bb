use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig, Repr};
use dashu_int::{IBig, Sign as DSign, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use super::scalar::{bigint_log2, Rational, Scalar};

type F = FBig<HalfEven, 2>;

/// Smallest precision accepted for data values.
pub const MIN_PRECISION: usize = 64;
/// Default working precision for the big-float backend.
pub const DEFAULT_PRECISION: usize = 256;

/// Binary big-float with round-half-even arithmetic.
///
/// Values built from integers are exact (precision 0) and take on the
/// precision of the other operand. Dividing two exact values rounds to
/// [`DEFAULT_PRECISION`] bits.
#[derive(Clone)]
pub struct BigFloat(F);

fn ibig_from(n: &BigInt) -> IBig {
    let (s, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    match s {
        Sign::Minus => IBig::from_parts(DSign::Negative, mag),
        _ => IBig::from_parts(DSign::Positive, mag),
    }
}

fn bigint_from(n: &IBig) -> BigInt {
    let (s, mag) = n.clone().into_parts();
    let bytes = mag.to_le_bytes();
    let sign = if mag.is_zero() {
        Sign::NoSign
    } else if s == DSign::Negative {
        Sign::Minus
    } else {
        Sign::Plus
    };
    BigInt::from_bytes_le(sign, &bytes)
}

fn ctx(p: usize) -> Context<HalfEven> {
    Context::new(p)
}

impl BigFloat {
    /// Exact value `m · 2^e`.
    pub fn from_parts(m: &BigInt, e: isize) -> Self {
        BigFloat(F::from_repr(Repr::new(ibig_from(m), e), ctx(0)))
    }

    /// Exact integer rounded to `prec` bits.
    pub fn from_int(n: &BigInt, prec: usize) -> Self {
        Self::from_parts(n, 0).with_precision(prec)
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        let r = self.0.repr().clone();
        BigFloat(ctx(prec).unwrap_fp(ctx(prec).add(&r, &Repr::zero())))
    }

    /// Significand and binary exponent.
    pub fn parts(&self) -> (BigInt, isize) {
        let r = self.0.repr();
        (bigint_from(r.significand()), r.exponent())
    }

    pub fn ln(&self) -> Self {
        let p = self.work_prec();
        BigFloat(self.with_precision(p).0.ln())
    }

    pub fn exp(&self) -> Self {
        let p = self.work_prec();
        BigFloat(self.with_precision(p).0.exp())
    }

    pub fn sqrt(&self) -> Self {
        let p = self.work_prec();
        BigFloat(self.with_precision(p).0.sqrt())
    }

    fn work_prec(&self) -> usize {
        match self.0.precision() {
            0 => DEFAULT_PRECISION,
            p => p,
        }
    }

    fn binop(
        a: &Self,
        b: &Self,
        f: impl Fn(&Context<HalfEven>, &Repr<2>, &Repr<2>) -> dashu_float::FpResult<F>,
        exact_fallback: bool,
    ) -> Self {
        let mut p = a.0.precision().max(b.0.precision());
        if p == 0 && exact_fallback {
            p = DEFAULT_PRECISION;
        }
        let c = ctx(p);
        BigFloat(c.unwrap_fp(f(&c, a.0.repr(), b.0.repr())))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({self})")
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.parts();
        if m.is_zero() {
            return write!(f, "0");
        }
        if e >= 0 && e < 64 {
            return write!(f, "{}", m << e as usize);
        }
        // about log10(2) decimal digits per bit of precision
        let bits = self.work_prec().max(m.bits() as usize);
        let digits = (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        let dec = self.0.clone().with_base_and_precision::<10>(digits).value();
        write!(f, "{dec}")
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0.repr() == other.0.repr()
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.repr().partial_cmp(other.0.repr())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $fallback:expr) => {
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                BigFloat::binop(&self, &rhs, |c, a, b| c.$m(a, b), $fallback)
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'a BigFloat) -> BigFloat {
                BigFloat::binop(&self, rhs, |c, a, b| c.$m(a, b), $fallback)
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'a BigFloat) -> BigFloat {
                BigFloat::binop(self, rhs, |c, a, b| c.$m(a, b), $fallback)
            }
        }
    };
}

forward_binop!(Add, add, false);
forward_binop!(Sub, sub, false);
forward_binop!(Mul, mul, false);
forward_binop!(Div, div, true);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Scalar for BigFloat {
    const EXACT: bool = false;

    fn zero() -> Self {
        BigFloat(F::ZERO)
    }
    fn one() -> Self {
        BigFloat(F::ONE)
    }
    fn from_i64(v: i64) -> Self {
        Self::from_parts(&BigInt::from(v), 0)
    }
    fn from_rational(q: &Rational, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let n = Self::from_parts(q.numer(), 0);
        if q.denom().is_one() {
            return n.with_precision(prec);
        }
        let d = Self::from_parts(q.denom(), 0);
        let c = ctx(prec);
        BigFloat(c.unwrap_fp(c.div(n.0.repr(), d.0.repr())))
    }
    fn to_rational(&self) -> Rational {
        let (m, e) = self.parts();
        if e >= 0 {
            Rational::from_integer(m << e as usize)
        } else {
            Rational::new(m, BigInt::one() << (-e) as usize)
        }
    }
    fn is_zero(&self) -> bool {
        self.0.repr().significand().is_zero()
    }
    fn signum(&self) -> i32 {
        let s = self.0.repr().significand();
        if s.is_zero() {
            0
        } else if s.sign() == DSign::Negative {
            -1
        } else {
            1
        }
    }
    fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn log2_abs(&self) -> f64 {
        let (m, e) = self.parts();
        bigint_log2(&m) + e as f64
    }
    fn precision(&self) -> Option<usize> {
        match self.0.precision() {
            0 => None,
            p => Some(p),
        }
    }
    fn negligible_against(&self, scale: &Self) -> bool {
        if self.is_zero() {
            return true;
        }
        if scale.is_zero() {
            return false;
        }
        let p = self.work_prec().max(scale.work_prec());
        self.log2_abs() < scale.log2_abs() - (p / 2) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::parse_rational;

    #[test]
    fn exact_round_trip_through_rational() {
        let q = parse_rational("-3/8").unwrap();
        let f = BigFloat::from_rational(&q, 128);
        assert_eq!(f.to_rational(), q);
        assert_eq!(f.precision(), Some(128));
    }

    #[test]
    fn third_is_accurate_to_precision() {
        let third = parse_rational("1/3").unwrap();
        let f = BigFloat::from_rational(&third, 256);
        let err = Scalar::abs(&(f.to_rational() - &third));
        assert!(Scalar::log2_abs(&err) < -255.0);
    }

    #[test]
    fn exact_constants_adopt_data_precision() {
        let x = BigFloat::from_rational(&parse_rational("1/7").unwrap(), 200);
        let y = BigFloat::one() / x.clone();
        assert_eq!(y.precision(), Some(200));
        let back = (y * &x).to_rational();
        let err = Scalar::abs(&(back - Rational::from_i64(1)));
        assert!(Scalar::log2_abs(&err) < -190.0);
    }

    #[test]
    fn exact_division_falls_back_to_default() {
        let y = BigFloat::one() / BigFloat::from_i64(3);
        assert_eq!(y.precision(), Some(DEFAULT_PRECISION));
    }

    #[test]
    fn signs_and_ordering() {
        let a = BigFloat::from_i64(-2);
        let b = BigFloat::from_i64(5);
        assert!(a < b);
        assert_eq!(a.signum(), -1);
        assert_eq!(Scalar::abs(&a), BigFloat::from_i64(2));
        assert_eq!(BigFloat::zero().signum(), 0);
    }

    #[test]
    fn negligible_uses_half_precision() {
        let scale = BigFloat::from_rational(&Rational::from_i64(1), 128);
        let tiny = BigFloat::from_rational(&Rational::new(1.into(), BigInt::one() << 80u32), 128);
        let small = BigFloat::from_rational(&Rational::new(1.into(), BigInt::one() << 40u32), 128);
        assert!(tiny.negligible_against(&scale));
        assert!(!small.negligible_against(&scale));
    }

    #[test]
    fn ln_and_display() {
        let e = BigFloat::from_rational(&Rational::from_i64(1), 128).exp();
        let l = e.ln();
        assert!((l.to_f64() - 1.0).abs() < 1e-30);
        let s = BigFloat::from_rational(&parse_rational("1/4").unwrap(), 64).to_string();
        assert!(s.starts_with("0.25"), "{s}");
        assert_eq!(BigFloat::from_i64(12).to_string(), "12");
    }
}
