use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Ends, ExtReal, Polynomial, Rational, Scalar};
use crate::hermitepade::MultiIndex;
use crate::measures::{validate_chain, ExtendedInterval, NikishinSystem};

use super::form::LinearForm;
use super::zeros::{count_off, count_roots};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtReport {
    pub index: MultiIndex,
    pub trials: usize,
    /// Largest number of finite zeros off Δ_1 over all trials.
    pub max_off_delta1: usize,
    /// Largest number of zeros in the caller's interval Δ.
    pub max_in_delta: usize,
    pub bound: usize,
    pub certified: bool,
}

/// Uniform p/q with 1 ≤ q ≤ 16 and |p/q| ≤ 10.
fn sample(rng: &mut ChaCha8Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=16);
    let p: i64 = rng.gen_range(-10 * q..=10 * q);
    Rational::new(p.into(), q.into())
}

fn trial_rng(seed: u64, n: &MultiIndex, trial: usize) -> ChaCha8Rng {
    let h = n.components().iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &c| (h ^ c as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(trial as u64);
    rng
}

/// Random coefficient tuple with deg p_k ≤ n_k − 1, not all zero.
pub fn random_coefficients(rng: &mut ChaCha8Rng, n: &MultiIndex) -> Vec<Polynomial<Rational>> {
    loop {
        let ps: Vec<Polynomial<Rational>> =
            n.components().iter().map(|&nk| Polynomial::new((0..nk).map(|_| sample(rng)).collect())).collect();
        if ps.iter().any(|p| !p.is_zero()) {
            return ps;
        }
    }
}

/// Randomised check that p_0 + Σ p_k ŝ_{1,k} has at most |n| − 1 zeros off Δ_1.
///
/// `sys` starts at the generator playing σ_1; `delta` must not meet the interior of Δ_1.
pub fn at_system_zero_bound<S: Scalar>(
    sys: &NikishinSystem<S>,
    n: &MultiIndex,
    trials: usize,
    seed: u64,
    delta: &ExtendedInterval,
) -> Result<AtReport> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial".into()));
    }
    if n.len() != sys.len() + 1 {
        return Err(Error::InvalidIndex(format!("{n} needs {} components", sys.len() + 1)));
    }
    if n.norm() == 0 {
        return Err(Error::InvalidIndex("the zero index admits no nonzero form".into()));
    }
    let sys = validate_chain(sys.chain().to_rational())?;
    let (a, b) = sys.measures()[0].hull_bounds();
    if a < b && delta.interiors_meet(&ExtendedInterval::finite(a, b)?) {
        return Err(Error::Precondition(format!("Δ = {delta} meets the interior of Δ_1")));
    }
    sys.warm();
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, n, t);
            let form = LinearForm::new(random_coefficients(&mut rng, n), Some(sys.clone()))?;
            let num = form.reduced_numerator()?;
            let off = count_off(&form, &num)?;
            let inside = if num.degree() <= 0 {
                0
            } else {
                count_roots(&num, delta.lo(), delta.hi(), Ends::OPEN)?
            };
            Ok((off, inside))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    let max_off_delta1 = counts.iter().map(|c| c.0).max().unwrap_or(0);
    let max_in_delta = counts.iter().map(|c| c.1).max().unwrap_or(0);
    let bound = n.norm() - 1;
    Ok(AtReport {
        index: n.clone(),
        trials,
        max_off_delta1,
        max_in_delta,
        bound,
        certified: max_off_delta1 <= bound && max_in_delta <= bound,
    })
}

/// The interval left of Δ_1: (−∞, min atom).
pub fn left_of_delta1<S: Scalar>(sys: &NikishinSystem<S>) -> ExtendedInterval {
    let (a, _) = sys.measures()[0].hull_bounds();
    ExtendedInterval::new(ExtReal::NegInf, ExtReal::Finite(a)).expect("finite end")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{AtomicMeasure, GeneratorChain};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn two_atom_generator() {
        let s = AtomicMeasure::uniform(vec![q(2), q(3)]).unwrap();
        let sys = validate_chain(GeneratorChain::new(vec![s], 1)).unwrap();
        let n = MultiIndex::new(vec![1, 1]).unwrap();
        let r = at_system_zero_bound(&sys, &n, 50, 42, &left_of_delta1(&sys)).unwrap();
        assert!(r.certified && r.max_off_delta1 <= 1);
        let again = at_system_zero_bound(&sys, &n, 50, 42, &left_of_delta1(&sys)).unwrap();
        assert_eq!(r, again);
        let zero_comp = MultiIndex::new(vec![2, 0]).unwrap();
        assert!(at_system_zero_bound(&sys, &zero_comp, 20, 1, &left_of_delta1(&sys)).unwrap().certified);
        let bad = ExtendedInterval::finite(q(0), q(5) / q(2)).unwrap();
        assert!(at_system_zero_bound(&sys, &n, 5, 1, &bad).is_err());
    }
}
