//! Gauss rules for the classical weights, built from exact moments.
//!
//! Recurrence coefficients come from the Chebyshev algorithm run in exact
//! rationals, the nodes are the real roots of the N-th monic orthogonal
//! polynomial (isolated by Sturm sequences and bisected far below the working
//! precision), and the weights are Christoffel numbers in big-float.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::exactnum::{BigFloat, Polynomial, Rational, Scalar, SquareFree};
use crate::exactnum::sturm::{root_bound, to_int_poly};

use super::atomic::AtomicMeasure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// e^{−x} on [0, ∞).
    Laguerre,
    /// e^{x} on (−∞, 0].
    NegLaguerre,
    /// dx / √(x(1−x)) on [0, 1].
    Arcsine,
    /// dx on [−1, 0].
    Lebesgue,
}

impl Preset {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "laguerre" => Ok(Preset::Laguerre),
            "neg-laguerre" => Ok(Preset::NegLaguerre),
            "arcsine" => Ok(Preset::Arcsine),
            "lebesgue" => Ok(Preset::Lebesgue),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Laguerre => "laguerre",
            Preset::NegLaguerre => "neg-laguerre",
            Preset::Arcsine => "arcsine",
            Preset::Lebesgue => "lebesgue",
        }
    }

    /// Moment `n` up to the factor returned by [`Preset::scale`].
    pub fn rational_moment(&self, n: usize) -> Rational {
        let fact = || (1..=n as u64).fold(BigInt::from(1), |a, k| a * k);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        match self {
            Preset::Laguerre => Rational::from_integer(fact()),
            Preset::NegLaguerre => Rational::from_integer(fact() * sign),
            Preset::Arcsine => Rational::new(
                binomial(BigInt::from(2 * n), BigInt::from(n)),
                BigInt::from(4).pow(n as u32),
            ),
            Preset::Lebesgue => Rational::new(BigInt::from(sign), BigInt::from(n + 1)),
        }
    }

    /// Common factor of all moments (π for the arcsine weight, else 1).
    pub fn scale(&self, prec: usize) -> BigFloat {
        match self {
            Preset::Arcsine => pi(prec),
            _ => BigFloat::from_rational(&Rational::from_i64(1), prec),
        }
    }

    pub fn moment(&self, n: usize, prec: usize) -> BigFloat {
        BigFloat::from_rational(&self.rational_moment(n), prec) * &self.scale(prec)
    }
}

/// Recurrence coefficients (α_k, β_k), k < n, of the monic orthogonal
/// polynomials for the moments `mu` (needs 2n of them). β_0 = μ_0.
pub fn chebyshev_recurrence(mu: &[Rational], n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if mu.len() < 2 * n {
        return Err(Error::InsufficientMoments { needed: 2 * n, got: mu.len() });
    }
    if mu[0].is_zero() {
        return Err(Error::ZeroTotalMass);
    }
    let len = 2 * n;
    let mut prev = vec![Rational::from_i64(0); len];
    let mut cur: Vec<Rational> = mu[..len].to_vec();
    let mut alpha = vec![mu[1].clone() / &mu[0]];
    let mut beta = vec![mu[0].clone()];
    for k in 1..n {
        let mut next = vec![Rational::from_i64(0); len];
        for l in k..len - k {
            next[l] = cur[l + 1].clone() - alpha[k - 1].clone() * &cur[l] - beta[k - 1].clone() * &prev[l];
        }
        if next[k].is_zero() {
            return Err(Error::DegenerateSystem(format!("moment functional degenerates at degree {k}")));
        }
        alpha.push(next[k + 1].clone() / &next[k] - cur[k].clone() / &cur[k - 1]);
        beta.push(next[k].clone() / &cur[k - 1]);
        prev = cur;
        cur = next;
    }
    Ok((alpha, beta))
}

/// Monic orthogonal polynomials p_0, …, p_n from the recurrence.
pub fn orthogonal_polynomials(alpha: &[Rational], beta: &[Rational], n: usize) -> Vec<Polynomial<Rational>> {
    let mut ps = vec![Polynomial::one()];
    let mut prev = Polynomial::zero();
    for k in 0..n {
        let cur = ps[k].clone();
        let next = &(&cur * &Polynomial::x_minus(&alpha[k])) - &prev.scale(&beta[k]);
        prev = cur;
        ps.push(next);
    }
    ps
}

/// N-point Gauss rule for a preset weight at `prec` bits.
pub fn discretize_weight(preset: Preset, n: usize, prec: usize) -> Result<AtomicMeasure<BigFloat>> {
    if n < 2 {
        return Err(Error::Precondition(format!("need at least 2 nodes, got {n}")));
    }
    let mu: Vec<Rational> = (0..2 * n).map(|k| preset.rational_moment(k)).collect();
    let (alpha, beta) = chebyshev_recurrence(&mu, n)?;
    let ps = orthogonal_polynomials(&alpha, &beta, n);
    let sf = SquareFree::new(&to_int_poly(&ps[n]))?;
    let b = root_bound(&sf.poly);
    let ivs = sf.isolate(&-b.clone(), &b)?;
    if ivs.len() != n {
        return Err(Error::Internal(format!("{} real nodes for a {n}-point rule", ivs.len())));
    }
    let out_prec = prec;
    let prec = prec + 32;
    let width = Rational::new(BigInt::from(1), BigInt::from(1) << (prec + 24));
    let scale = preset.scale(prec);
    // ‖p_k‖² = β_0 β_1 ⋯ β_k
    let mut norms = Vec::with_capacity(n);
    let mut acc = Rational::from_i64(1);
    for bk in &beta {
        acc = acc * bk;
        norms.push(BigFloat::from_rational(&acc, prec));
    }
    let fps: Vec<Polynomial<BigFloat>> = ps[..n].iter().map(|p| Polynomial::from_rational(p, prec)).collect();
    let mut atoms = Vec::with_capacity(n);
    for iv in &ivs {
        let x = BigFloat::from_rational(&sf.refine(iv, &width).midpoint(), prec);
        let mut s = BigFloat::from_rational(&Rational::from_i64(0), prec);
        for (p, h) in fps.iter().zip(&norms) {
            let v = p.eval(&x);
            s = s + v.clone() * &v / h;
        }
        let w = scale.clone() / &s;
        atoms.push((x.with_precision(out_prec), w.with_precision(out_prec)));
    }
    AtomicMeasure::new(atoms)
}

fn arctan_inv(k: i64, prec: usize) -> BigFloat {
    // Σ (−1)^j / ((2j+1) k^{2j+1})
    let wp = prec + 32;
    let one = BigFloat::from_rational(&Rational::from_i64(1), wp);
    let k2 = BigFloat::from_i64(k * k);
    let mut pow = one.clone() / &BigFloat::from_i64(k);
    let mut sum = BigFloat::from_rational(&Rational::from_i64(0), wp);
    let mut j = 0i64;
    loop {
        let term = pow.clone() / &BigFloat::from_i64(2 * j + 1);
        if term.is_zero() || term.log2_abs() < -(wp as f64) - 8.0 {
            break;
        }
        sum = if j % 2 == 0 { sum + term } else { sum - term };
        pow = pow / &k2;
        j += 1;
    }
    sum
}

/// π by Machin's formula.
pub fn pi(prec: usize) -> BigFloat {
    let a = arctan_inv(5, prec) * &BigFloat::from_i64(16);
    let b = arctan_inv(239, prec) * &BigFloat::from_i64(4);
    (a - b).with_precision(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: &BigFloat, b: &BigFloat) -> f64 {
        let d = a.clone() - b;
        if d.is_zero() {
            return f64::NEG_INFINITY;
        }
        d.log2_abs() - b.log2_abs()
    }

    #[test]
    fn pi_digits() {
        let p = pi(256);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let s = p.to_string();
        assert!(s.starts_with("3.14159265358979323846264338327950288"), "{s}");
    }

    #[test]
    fn lebesgue_two_points() {
        let m = discretize_weight(Preset::Lebesgue, 2, 128).unwrap();
        // Gauss-Legendre nodes −1/2 ± 1/(2√3)
        let x0 = m.positions()[0].to_f64();
        assert!((x0 - (-0.5 - 0.5 / 3f64.sqrt())).abs() < 1e-14);
        assert!(rel_err(&m.moment(0), &BigFloat::from_i64(1)) < -120.0);
        let half = BigFloat::from_rational(&Rational::new((-1).into(), 2.into()), 128);
        assert!(rel_err(&m.moment(1), &half) < -120.0);
    }

    #[test]
    fn laguerre_third_moment() {
        let m = discretize_weight(Preset::Laguerre, 5, 128).unwrap();
        assert!((m.moment(3).to_f64() - 6.0).abs() < 1e-25);
        assert!(m.positions().iter().all(|x| x.signum() > 0));
    }

    #[test]
    fn moments_match_to_precision() {
        let p = 256;
        for preset in [Preset::Laguerre, Preset::NegLaguerre, Preset::Arcsine, Preset::Lebesgue] {
            let n = 8;
            let m = discretize_weight(preset, n, p).unwrap();
            for k in 0..2 * n {
                let e = rel_err(&m.moment(k), &preset.moment(k, p));
                assert!(e < 8.0 - p as f64, "{preset:?} moment {k}: 2^{e}");
            }
        }
    }

    #[test]
    fn arcsine_first_moment_and_support() {
        let m = discretize_weight(Preset::Arcsine, 8, 256).unwrap();
        // ∫_0^1 x dx/√(x(1−x)) = π/2
        assert!((m.moment(1).to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let (lo, hi) = m.hull_bounds();
        assert!(lo > Rational::from_i64(0) && hi < Rational::from_i64(1));
    }

    #[test]
    fn bad_input() {
        assert!(discretize_weight(Preset::Laguerre, 1, 128).is_err());
        assert_eq!(Preset::from_name("hermite").unwrap_err(), Error::UnknownPreset("hermite".into()));
        assert_eq!(Preset::from_name("neg-laguerre").unwrap(), Preset::NegLaguerre);
    }
}
