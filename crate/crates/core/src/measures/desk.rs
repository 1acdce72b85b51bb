//! Small fixed systems used by tests, the CLI and the acceptance suite.

use crate::error::Result;
use crate::exactnum::{BigFloat, Rational, Scalar};

use super::atomic::AtomicMeasure;
use super::discretize::{discretize_weight, Preset};
use super::system::GeneratorChain;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn grid(offset: i64) -> AtomicMeasure<Rational> {
    AtomicMeasure::new((1..=24).map(|i| (q(offset * 25 + i, 25), q(1, 24))).collect()).expect("valid atoms")
}

/// Three generators with 24 atoms each: i/25 in (0,1), 2 + i/25 in (2,3),
/// 4 + i/25 in (4,5), all with weight 1/24. Labels start at 0.
pub fn d1_chain() -> GeneratorChain<Rational> {
    GeneratorChain::new(vec![grid(0), grid(2), grid(4)], 0)
}

/// Root σ_0 on four atoms in [0,1] and one follower per side:
/// {2, 5/2, 3, 7/2} for the first system and {−3, −5/2, −2, −3/2} for the second.
pub fn toy_chains() -> (GeneratorChain<Rational>, GeneratorChain<Rational>) {
    let m = |v: &[(i64, i64, i64)]| {
        AtomicMeasure::new(v.iter().map(|&(n, d, w)| (q(n, d), q(w, 1))).collect()).expect("valid atoms")
    };
    let s0 = m(&[(0, 1, 1), (1, 3, 2), (2, 3, 1), (1, 1, 3)]);
    let a = m(&[(2, 1, 1), (5, 2, 1), (3, 1, 2), (7, 2, 1)]);
    let b = m(&[(-3, 1, 2), (-5, 2, 1), (-2, 1, 1), (-3, 2, 1)]);
    (GeneratorChain::new(vec![s0.clone(), a], 0), GeneratorChain::new(vec![s0, b], 0))
}

/// {1/4, 1/2, 3/4} and {−3/4, −1/2, −1/4} with unit weights, touching at 0.
pub fn touching_chain() -> GeneratorChain<Rational> {
    let a = AtomicMeasure::uniform(vec![q(1, 4), q(1, 2), q(3, 4)]).expect("valid atoms");
    let b = AtomicMeasure::uniform(vec![q(-3, 4), q(-1, 2), q(-1, 4)]).expect("valid atoms");
    GeneratorChain::new(vec![a, b], 0).with_touch_points(vec![Some(q(0, 1))])
}

/// Unit atoms at 0, 1, 2.
pub fn one_measure_chain() -> GeneratorChain<Rational> {
    GeneratorChain::new(vec![AtomicMeasure::uniform(vec![q(0, 1), q(1, 1), q(2, 1)]).expect("valid atoms")], 0)
}

/// Discretized arcsine weight on [0,1] followed by Lebesgue measure on [−1,0], touching at 0.
pub fn arcsine_lebesgue_chain(n: usize, prec: usize) -> Result<GeneratorChain<BigFloat>> {
    let a = discretize_weight(Preset::Arcsine, n, prec)?;
    let b = discretize_weight(Preset::Lebesgue, n, prec)?;
    Ok(GeneratorChain::new(vec![a, b], 0).with_touch_points(vec![Some(Rational::from_i64(0))]))
}

/// Discretized e^{−x} on [0,∞) followed by e^{x} on (−∞,0], touching at 0.
pub fn laguerre_pair_chain(n: usize, prec: usize) -> Result<GeneratorChain<BigFloat>> {
    let a = discretize_weight(Preset::Laguerre, n, prec)?;
    let b = discretize_weight(Preset::NegLaguerre, n, prec)?;
    Ok(GeneratorChain::new(vec![a, b], 0).with_touch_points(vec![Some(Rational::from_i64(0))]))
}
