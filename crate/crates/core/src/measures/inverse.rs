use crate::error::{Error, Result};
use crate::exactnum::{modular, sturm, Polynomial, Rational, RationalFunction, RootInterval, Scalar, SquareFree};

use super::atomic::AtomicMeasure;

/// Moments c_0, c_1, … of a measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S>(Vec<S>);

impl<S: Scalar> MomentSequence<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientMoments { needed: 1, got: 0 });
        }
        Ok(MomentSequence(values))
    }

    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// 1/ŝ(z) = d₋₂ z + d₋₁ + Σ_k d_k z^{−k−1}, where the d_k are moments of τ.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseDecomposition<S> {
    pub d_minus2: S,
    pub d_minus1: S,
    pub tau_moments: MomentSequence<S>,
    pub tau_sign: i32,
}

/// Solves the triangular system linking the moments of s and of τ.
///
/// Needs c_0, …, c_{n+2}; returns d_0, …, d_n.
pub fn inverse_decomposition<S: Scalar>(c: &MomentSequence<S>, n: usize) -> Result<InverseDecomposition<S>> {
    let c = c.values();
    if c[0].is_zero() {
        return Err(Error::ZeroTotalMass);
    }
    if c.len() < n + 3 {
        return Err(Error::InsufficientMoments { needed: n + 3, got: c.len() });
    }
    let inv = S::one() / &c[0];
    let dm2 = inv.clone();
    let dm1 = -(c[1].clone() * &inv * &inv);
    let mut d: Vec<S> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = dm2.clone() * &c[k + 2] + dm1.clone() * &c[k + 1];
        for (i, di) in d.iter().enumerate() {
            acc = acc + di.clone() * &c[k - i];
        }
        d.push(-(acc * &inv));
    }
    Ok(InverseDecomposition {
        d_minus2: dm2,
        d_minus1: dm1,
        tau_moments: MomentSequence(d),
        tau_sign: -c[0].signum(),
    })
}

impl<S: Scalar> InverseDecomposition<S> {
    /// Left sides of every row of the triangular system (all zero except the first, which is 1).
    pub fn rows(&self, c: &MomentSequence<S>) -> Vec<S> {
        let c = c.values();
        let d = self.tau_moments.values();
        let mut out = vec![self.d_minus2.clone() * &c[0], self.d_minus2.clone() * &c[1] + self.d_minus1.clone() * &c[0]];
        for k in 0..d.len() {
            let mut acc = self.d_minus2.clone() * &c[k + 2] + self.d_minus1.clone() * &c[k + 1];
            for (i, di) in d.iter().take(k + 1).enumerate() {
                acc = acc + di.clone() * &c[k - i];
            }
            out.push(acc);
        }
        out
    }
}

/// Exact split 1/ŝ = ℓ + τ̂ for an atomic measure.
#[derive(Clone, Debug)]
pub struct InverseRational<S> {
    /// ℓ(z) = d₋₂ z + d₋₁.
    pub ell: Polynomial<S>,
    /// τ̂ = R/N with N monic; N vanishes exactly at the zeros of ŝ.
    pub tau: RationalFunction<S>,
    pub warning: Option<String>,
}

pub fn inverse_as_rational<S: Scalar>(s: &AtomicMeasure<S>) -> Result<InverseRational<S>> {
    let f = s.cauchy_rational();
    // 1/ŝ = D/N with deg N = deg D − 1
    let (ell, r) = f.den().div_rem(f.num())?;
    let warning = (s.len() == 1).then(|| "single atom: ŝ has no finite zeros, τ̂ is zero".to_string());
    let tau = RationalFunction::new(r, f.num().clone())?;
    Ok(InverseRational { ell, tau, warning })
}

impl<S: Scalar> InverseRational<S> {
    /// ℓ + τ̂ as one rational function.
    pub fn total(&self) -> RationalFunction<S> {
        &RationalFunction::from_poly(self.ell.clone()) + &self.tau
    }
}

impl InverseRational<Rational> {
    /// Isolating intervals for the atoms of τ and the sign of each residue.
    pub fn residue_signs(&self) -> Result<(Vec<RootInterval>, Vec<i32>)> {
        let n = self.tau.den();
        if n.degree() <= 0 || self.tau.is_zero() {
            return Ok((vec![], vec![]));
        }
        let np = sturm::to_int_poly(n);
        let sf = SquareFree::new(&np)?;
        let b = sturm::root_bound(&sf.poly);
        let ivs = sf.isolate(&-b.clone(), &b)?;
        // residue at y is R(y)/N'(y); its sign is that of R·N'
        let g = self.tau.num() * &n.derivative();
        let signs = sf.signs_at_roots(&ivs, &sturm::to_int_poly(&g));
        Ok((ivs, signs))
    }

    /// ∫ g(x) dτ(x)/(z − x) for rational g without poles at the atoms of τ.
    ///
    /// With τ̂ = R/N the result is (R·g mod N)/N, where g is read modulo N.
    pub fn integrate(&self, g: &RationalFunction<Rational>) -> Result<RationalFunction<Rational>> {
        integrate_against(&self.tau, g)
    }
}

/// ∫ g dτ/(z − x) where τ̂ = `tau` has simple poles only.
pub fn integrate_against(
    tau: &RationalFunction<Rational>,
    g: &RationalFunction<Rational>,
) -> Result<RationalFunction<Rational>> {
    let n = tau.den();
    if tau.is_zero() || n.degree() <= 0 {
        return Ok(RationalFunction::zero());
    }
    let r = modular::mul_inverse_mod(&(tau.num() * g.num()), g.den(), n).ok_or(Error::PoleEvaluation)?;
    RationalFunction::new(r, n.clone())
}
