use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, ExtReal, Rational};

/// Interval of the extended real line with `lo < hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedInterval {
    lo: ExtReal,
    hi: ExtReal,
}

impl ExtendedInterval {
    pub fn new(lo: ExtReal, hi: ExtReal) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        Ok(ExtendedInterval { lo, hi })
    }

    pub fn finite(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(ExtReal::Finite(lo), ExtReal::Finite(hi))
    }

    pub fn real_line() -> Self {
        ExtendedInterval { lo: ExtReal::NegInf, hi: ExtReal::PosInf }
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn contains_open(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        self.lo < x && x < self.hi
    }

    pub fn contains_closed(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        self.lo <= x && x <= self.hi
    }

    /// True when the interiors overlap.
    pub fn interiors_meet(&self, o: &Self) -> bool {
        self.lo < o.hi && o.lo < self.hi
    }
}

impl fmt::Display for ExtendedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: &ExtReal| match x {
            ExtReal::NegInf => "-inf".to_string(),
            ExtReal::PosInf => "+inf".to_string(),
            ExtReal::Finite(q) => format_rational(q),
        };
        write!(f, "[{}, {}]", s(&self.lo), s(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn ordering_is_strict() {
        assert!(ExtendedInterval::finite(q(1), q(1)).is_err());
        assert!(ExtendedInterval::new(ExtReal::PosInf, ExtReal::Finite(q(0))).is_err());
        let i = ExtendedInterval::new(ExtReal::NegInf, ExtReal::Finite(q(0))).unwrap();
        assert!(i.contains_closed(&q(0)));
        assert!(!i.contains_open(&q(0)));
        assert!(i.contains_open(&q(-100)));
    }

    #[test]
    fn touching_intervals_do_not_meet() {
        let a = ExtendedInterval::finite(q(-1), q(0)).unwrap();
        let b = ExtendedInterval::finite(q(0), q(1)).unwrap();
        assert!(!a.interiors_meet(&b));
        let c = ExtendedInterval::finite(q(-1), q(1)).unwrap();
        assert!(a.interiors_meet(&c));
        assert!(ExtendedInterval::real_line().interiors_meet(&a));
    }
}
