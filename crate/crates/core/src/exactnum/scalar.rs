use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A field element in one of the two numeric backends.
///
/// Constructors that take no precision (`zero`, `one`, `from_i64`) produce
/// exact values; in the big-float backend they adopt the precision of
/// whatever they are combined with.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// True for the exact rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Rounds `q` to `prec` bits (ignored by the exact backend).
    fn from_rational(q: &Rational, prec: usize) -> Self;
    /// Exact value; big-floats are dyadic so this never rounds.
    fn to_rational(&self) -> Rational;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i32;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// log2 |x|, accurate for magnitudes far outside the f64 range. `-inf` for zero.
    fn log2_abs(&self) -> f64;
    /// Working precision in bits, `None` for exact values.
    fn precision(&self) -> Option<usize>;
    /// Rank decision: is `self` zero relative to `scale`?
    fn negligible_against(&self, scale: &Self) -> bool;
    /// Parses `p/q`, an integer, or a decimal literal.
    fn parse(s: &str, prec: usize) -> Result<Self> {
        Ok(Self::from_rational(&parse_rational(s)?, prec))
    }
    /// Serialized form: `p/q` for exact values, decimal for big-floats.
    fn to_string_repr(&self) -> String {
        self.to_string()
    }
}

/// Parses `"p/q"`, `"-7"`, or a decimal literal such as `"1.25e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn bigint_log2(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return n.to_f64().unwrap().abs().log2();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational, _prec: usize) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let l = Scalar::log2_abs(self);
            let s = Scalar::signum(self) as f64;
            s * l.exp2()
        })
    }
    fn log2_abs(&self) -> f64 {
        if Zero::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        bigint_log2(self.numer()) - bigint_log2(self.denom())
    }
    fn precision(&self) -> Option<usize> {
        None
    }
    fn negligible_against(&self, _scale: &Self) -> bool {
        Zero::is_zero(self)
    }
    fn to_string_repr(&self) -> String {
        format_rational(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("1.25e-1").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "--1", "1/x", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn format_round_trips() {
        for s in ["0", "5", "-3/4", "12345678901234567890/7"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(format_rational(&v), s);
        }
    }

    #[test]
    fn log2_of_huge_rational() {
        let big = Rational::from_integer(BigInt::from(1) << 5000u32);
        let v = Scalar::log2_abs(&(big / q(3, 1)));
        assert!((v - (5000.0 - 3f64.log2())).abs() < 1e-9);
        assert_eq!(Scalar::log2_abs(&q(0, 1)), f64::NEG_INFINITY);
    }
}
