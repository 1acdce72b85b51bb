//! Partial sums of Σ_{n≥1} |c_n|^{−1/(2n)} for a moment sequence.

use serde::Serialize;

use crate::exactnum::{BigFloat, Scalar};

#[derive(Clone, Debug, Serialize)]
pub struct CarlemanReport {
    /// Last moment index used.
    pub n_max: usize,
    /// Partial sum after each n = 1..=n_max (a skipped term repeats the previous sum).
    pub partial_sums: Vec<f64>,
    /// The term |c_n|^{−1/(2n)} for n = 1..=n_max; `None` where c_n = 0.
    pub terms: Vec<Option<f64>>,
    pub warnings: Vec<String>,
    /// Divergence cannot be decided from finitely many terms.
    pub note: String,
}

/// Terms start at n = 1; the n = 0 term has exponent 1/0 and is left out.
/// Each term is exp(−ln|c_n| / 2n), computed at the precision of the moments.
pub fn carleman_report(moment: impl Fn(usize) -> BigFloat, n_max: usize) -> CarlemanReport {
    let mut sum = 0.0;
    let mut partial_sums = Vec::with_capacity(n_max);
    let mut terms = Vec::with_capacity(n_max);
    let mut warnings = Vec::new();
    for n in 1..=n_max {
        let c = moment(n).abs();
        if c.is_zero() {
            warnings.push(format!("c_{n} = 0, term skipped"));
            terms.push(None);
        } else {
            let p = c.precision().unwrap_or(64);
            let two_n = BigFloat::from_int(&(2 * n).into(), p);
            let t = (-(c.ln() / &two_n)).exp().to_f64();
            sum += t;
            terms.push(Some(t));
        }
        partial_sums.push(sum);
    }
    CarlemanReport {
        n_max,
        partial_sums,
        terms,
        warnings,
        note: "partial sums only; divergence of the series is not decided".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::measures::Preset;
    use num_bigint::BigInt;

    #[test]
    fn laguerre_sums_keep_growing() {
        let r = carleman_report(|n| Preset::Laguerre.moment(n, 128), 200);
        // (n!)^{−1/2n} ≈ sqrt(e/n), so partial sums grow like 2 sqrt(e n)
        let s = &r.partial_sums;
        assert!(s[199] - s[99] > 0.5 * (s[99] - s[49]));
        let t = r.terms[199].unwrap();
        assert!((t * (200f64 / std::f64::consts::E).sqrt() - 1.0).abs() < 0.05, "{t}");
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn bounded_support_grows_linearly() {
        // c_n = 1/(n + 1) from Lebesgue measure on [0, 1]: terms tend to 1
        let r = carleman_report(|n| BigFloat::from_rational(&Rational::new(1.into(), BigInt::from(n + 1)), 128), 100);
        assert!(r.terms.iter().all(|t| t.unwrap() >= 1.0));
        assert!(r.partial_sums[99] >= 100.0);
    }

    #[test]
    fn zero_moments_are_skipped() {
        // odd moments of a symmetric measure vanish
        let r = carleman_report(|n| BigFloat::from_rational(&Rational::from_integer(BigInt::from((n + 1) % 2)), 64), 6);
        assert_eq!(r.warnings.len(), 3);
        assert_eq!(r.terms[0], None);
        assert_eq!(r.partial_sums[0], 0.0);
        assert_eq!(r.partial_sums[5], 3.0);
    }

    #[test]
    fn double_factorial_growth_is_slower() {
        let fact2 = |n: usize| {
            let f = (1..=2 * n as u64).fold(BigInt::from(1), |a, k| a * k);
            BigFloat::from_int(&f, 128)
        };
        let a = carleman_report(fact2, 100);
        let b = carleman_report(|n| Preset::Laguerre.moment(n, 128), 100);
        assert!(a.partial_sums[99] < b.partial_sums[99]);
    }
}
