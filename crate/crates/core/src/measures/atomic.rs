use crate::error::{Error, Result};
use crate::exactnum::{ComplexPair, Polynomial, Rational, RationalFunction, Scalar};

use super::interval::ExtendedInterval;

/// Finitely many weighted atoms with weights of one sign.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicMeasure<S> {
    positions: Vec<S>,
    weights: Vec<S>,
    sign: i32,
}

impl<S: Scalar> AtomicMeasure<S> {
    /// Atoms are sorted by position; duplicates, zero weights and mixed signs are rejected.
    pub fn new(atoms: Vec<(S, S)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("a measure needs at least one atom".into()));
        }
        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable positions"));
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure("repeated atom position".into()));
        }
        let sign = atoms[0].1.signum();
        if atoms.iter().any(|(_, w)| w.is_zero()) {
            return Err(Error::InvalidMeasure("zero weight".into()));
        }
        if atoms.iter().any(|(_, w)| w.signum() != sign) {
            return Err(Error::SignViolation("weights of both signs in one measure".into()));
        }
        let (positions, weights) = atoms.into_iter().unzip();
        Ok(AtomicMeasure { positions, weights, sign })
    }

    /// Same as [`AtomicMeasure::new`] but also checks the declared sign.
    pub fn with_sign(atoms: Vec<(S, S)>, sign: i32) -> Result<Self> {
        let m = Self::new(atoms)?;
        if m.sign != sign {
            return Err(Error::SignViolation(format!("declared sign {sign}, weights have sign {}", m.sign)));
        }
        Ok(m)
    }

    /// Unit weights at the given points.
    pub fn uniform(points: Vec<S>) -> Result<Self> {
        Self::new(points.into_iter().map(|x| (x, S::one())).collect())
    }

    pub fn positions(&self) -> &[S] {
        &self.positions
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&S, &S)> {
        self.positions.iter().zip(&self.weights)
    }

    /// Smallest and largest atom, exactly.
    pub fn hull_bounds(&self) -> (Rational, Rational) {
        (self.positions[0].to_rational(), self.positions[self.len() - 1].to_rational())
    }

    /// Convex hull of the support; fails for a single atom.
    pub fn hull(&self) -> Result<ExtendedInterval> {
        let (a, b) = self.hull_bounds();
        ExtendedInterval::finite(a, b)
    }

    pub fn is_atom(&self, x: &S) -> bool {
        self.positions.iter().any(|p| p == x)
    }

    pub fn is_atom_rational(&self, x: &Rational) -> bool {
        self.positions.iter().any(|p| &p.to_rational() == x)
    }

    pub fn total_mass(&self) -> S {
        self.weights.iter().fold(S::zero(), |a, w| a + w)
    }

    /// ∫ x^ν ds.
    pub fn moment(&self, nu: usize) -> S {
        self.atoms().fold(S::zero(), |acc, (x, w)| acc + w.clone() * pow(x, nu))
    }

    pub fn moments(&self, count: usize) -> Vec<S> {
        let mut pows: Vec<S> = self.weights.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(pows.iter().fold(S::zero(), |a, b| a + b));
            for (p, x) in pows.iter_mut().zip(&self.positions) {
                *p = p.clone() * x;
            }
        }
        out
    }

    /// ŝ(z) = Σ w / (z − x).
    pub fn cauchy_eval(&self, z: &S) -> Result<S> {
        let mut acc = S::zero();
        for (x, w) in self.atoms() {
            let d = z.clone() - x;
            if d.is_zero() {
                return Err(Error::PoleEvaluation);
            }
            acc = acc + w.clone() / &d;
        }
        Ok(acc)
    }

    pub fn cauchy_eval_complex(&self, z: &ComplexPair<S>) -> Result<ComplexPair<S>> {
        let mut acc = ComplexPair::zero();
        for (x, w) in self.atoms() {
            let d = z.sub_real(x);
            let r = d.recip().ok_or(Error::PoleEvaluation)?;
            acc = acc + r.scale(w);
        }
        Ok(acc)
    }

    /// ŝ as N/D with D = Π (z − x_i), not reduced.
    pub fn cauchy_rational(&self) -> RationalFunction<S> {
        RationalFunction::new(self.cauchy_numerator(), Polynomial::from_roots(&self.positions))
            .expect("nonempty product")
    }

    /// N = Σ_i w_i Π_{l≠i} (z − x_l).
    pub fn cauchy_numerator(&self) -> Polynomial<S> {
        numerator_over_atoms(&self.positions, &self.weights)
    }

    pub fn scale(&self, c: &S) -> Result<Self> {
        Self::new(self.atoms().map(|(x, w)| (x.clone(), w.clone() * c)).collect())
    }

    pub fn to_rational(&self) -> AtomicMeasure<Rational> {
        AtomicMeasure {
            positions: self.positions.iter().map(|x| x.to_rational()).collect(),
            weights: self.weights.iter().map(|x| x.to_rational()).collect(),
            sign: self.sign,
        }
    }

    pub fn from_rational(m: &AtomicMeasure<Rational>, prec: usize) -> Result<Self> {
        Self::new(
            m.atoms()
                .map(|(x, w)| (S::from_rational(x, prec), S::from_rational(w, prec)))
                .collect(),
        )
    }
}

/// Σ_i w_i Π_{l≠i} (z − x_l), built from prefix and suffix products.
pub fn numerator_over_atoms<S: Scalar>(xs: &[S], ws: &[S]) -> Polynomial<S> {
    let n = xs.len();
    let mut prefix = vec![Polynomial::one()];
    for x in xs {
        let next = prefix.last().unwrap() * &Polynomial::x_minus(x);
        prefix.push(next);
    }
    let mut acc = Polynomial::zero();
    let mut suffix = Polynomial::one();
    for i in (0..n).rev() {
        let term = (&prefix[i] * &suffix).scale(&ws[i]);
        acc = &acc + &term;
        suffix = &suffix * &Polynomial::x_minus(&xs[i]);
    }
    acc
}

pub(crate) fn pow<S: Scalar>(x: &S, n: usize) -> S {
    let mut r = S::one();
    for _ in 0..n {
        r = r * x;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }
    fn m(v: &[(i64, i64)]) -> AtomicMeasure<Rational> {
        AtomicMeasure::new(v.iter().map(|&(x, w)| (q(x, 1), q(w, 1))).collect()).unwrap()
    }

    #[test]
    fn cauchy_direct_substitution() {
        assert_eq!(m(&[(0, 1), (1, 1)]).cauchy_eval(&q(2, 1)).unwrap(), q(3, 2));
        assert_eq!(m(&[(2, 1), (3, 1)]).cauchy_eval(&q(0, 1)).unwrap(), q(-5, 6));
        assert_eq!(m(&[(2, 1), (3, 1)]).cauchy_eval(&q(2, 1)), Err(Error::PoleEvaluation));
    }

    #[test]
    fn cauchy_asymptotics_give_mass() {
        let s = m(&[(0, 1), (1, 2), (2, 3)]);
        let t = q(1_000_000, 1);
        let v = t.clone() * s.cauchy_eval(&t).unwrap();
        let err = Scalar::abs(&(v - q(6, 1)));
        assert!(err < q(1, 10_000));
        // leading coefficient of the rational form is the mass exactly
        assert_eq!(s.cauchy_rational().num().lc(), q(6, 1));
    }

    #[test]
    fn moments_of_three_atoms() {
        let s = m(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(s.moments(3), vec![q(3, 1), q(3, 1), q(5, 1)]);
        assert_eq!(s.moment(2), q(5, 1));
    }

    #[test]
    fn rational_form_matches_sum() {
        let s = m(&[(-1, 2), (1, 3), (4, 1)]);
        let f = s.cauchy_rational();
        for z in [q(7, 3), q(-5, 1), q(10, 1)] {
            assert_eq!(f.eval(&z).unwrap(), s.cauchy_eval(&z).unwrap());
        }
        let z = ComplexPair::new(q(3, 2), q(2, 1));
        assert_eq!(f.eval_complex(&z).unwrap(), s.cauchy_eval_complex(&z).unwrap());
    }

    #[test]
    fn validation() {
        assert!(AtomicMeasure::<Rational>::new(vec![]).is_err());
        assert!(matches!(
            AtomicMeasure::new(vec![(q(0, 1), q(1, 1)), (q(1, 1), q(-1, 1))]),
            Err(Error::SignViolation(_))
        ));
        assert!(AtomicMeasure::new(vec![(q(0, 1), q(1, 1)), (q(0, 1), q(2, 1))]).is_err());
        assert!(AtomicMeasure::new(vec![(q(0, 1), q(0, 1))]).is_err());
        assert!(AtomicMeasure::with_sign(vec![(q(0, 1), q(1, 1))], -1).is_err());
        let s = m(&[(3, -1), (1, -2)]);
        assert_eq!(s.positions(), &[q(1, 1), q(3, 1)]);
        assert_eq!(s.sign(), -1);
        assert!(m(&[(1, 1)]).hull().is_err());
    }
}
