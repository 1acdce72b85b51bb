use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Polynomial, Rational, RationalFunction, Scalar};

use super::atomic::{numerator_over_atoms, pow, AtomicMeasure};

/// Ordered generators σ_first, σ_first+1, … with optional touch points
/// between consecutive ones.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorChain<S> {
    pub measures: Vec<AtomicMeasure<S>>,
    /// `touch_points[p]` sits between measure `p` and `p + 1`.
    pub touch_points: Vec<Option<Rational>>,
    /// Label of the first measure (0 for chains rooted at σ_0).
    pub first_label: usize,
}

impl<S: Scalar> GeneratorChain<S> {
    pub fn new(measures: Vec<AtomicMeasure<S>>, first_label: usize) -> Self {
        let n = measures.len().saturating_sub(1);
        GeneratorChain { measures, touch_points: vec![None; n], first_label }
    }

    pub fn with_touch_points(mut self, touch: Vec<Option<Rational>>) -> Self {
        self.touch_points = touch;
        self
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn to_rational(&self) -> GeneratorChain<Rational> {
        GeneratorChain {
            measures: self.measures.iter().map(|m| m.to_rational()).collect(),
            touch_points: self.touch_points.clone(),
            first_label: self.first_label,
        }
    }
}

/// What validation established besides the support geometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationRecord {
    /// Which consecutive pairs touch at a point.
    pub touching: Vec<bool>,
    /// Finite sums: the integrability condition and moment finiteness always hold.
    pub integrable: bool,
    pub moments_finite: bool,
}

struct Inner<S> {
    chain: GeneratorChain<S>,
    record: ValidationRecord,
    /// `weights[p][q - p]`: atom weights of ⟨σ_p,…,σ_q⟩ on the atoms of σ_p.
    weights: Vec<Vec<OnceLock<Vec<S>>>>,
    numerators: Vec<Vec<OnceLock<Polynomial<S>>>>,
    denominators: Vec<OnceLock<Polynomial<S>>>,
}

/// Validated generator chain with lazily filled transform tables.
///
/// Cloning is cheap and shares the tables.
#[derive(Clone)]
pub struct NikishinSystem<S> {
    inner: Arc<Inner<S>>,
    start: usize,
    first_label: usize,
}

impl<S: Scalar> std::fmt::Debug for NikishinSystem<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NikishinSystem")
            .field("labels", &(self.first_label..=self.last_label()))
            .field("atoms", &self.measures().iter().map(|m| m.len()).collect::<Vec<_>>())
            .finish()
    }
}

/// Checks the support conditions between consecutive generators.
pub fn validate_chain<S: Scalar>(chain: GeneratorChain<S>) -> Result<NikishinSystem<S>> {
    if chain.is_empty() {
        return Err(Error::Precondition("empty generator chain".into()));
    }
    let m = chain.len();
    if chain.touch_points.len() != m - 1 {
        return Err(Error::Precondition(format!(
            "{} touch point slots for {m} measures",
            chain.touch_points.len()
        )));
    }
    let mut touching = Vec::with_capacity(m - 1);
    for p in 0..m - 1 {
        let (a, b) = (&chain.measures[p], &chain.measures[p + 1]);
        let (la, lb) = (chain.first_label + p, chain.first_label + p + 1);
        let (a_lo, a_hi) = a.hull_bounds();
        let (b_lo, b_hi) = b.hull_bounds();
        match &chain.touch_points[p] {
            Some(t) => {
                if a.is_atom_rational(t) || b.is_atom_rational(t) {
                    return Err(Error::MassPointAtTouch(la, lb));
                }
                let left_right = a_hi < *t && *t < b_lo;
                let right_left = b_hi < *t && *t < a_lo;
                if !(left_right || right_left) {
                    if a_hi >= b_lo && b_hi >= a_lo {
                        return Err(Error::SupportsOverlap(la, lb));
                    }
                    return Err(Error::TouchPointMisplaced(la, lb));
                }
                touching.push(true);
            }
            None => {
                // hull endpoints are atoms, so a shared endpoint is a mass point
                if a_hi == b_lo || b_hi == a_lo {
                    return Err(Error::MassPointAtTouch(la, lb));
                }
                if a_hi > b_lo && b_hi > a_lo {
                    return Err(Error::SupportsOverlap(la, lb));
                }
                touching.push(false);
            }
        }
    }
    let weights = (0..m).map(|p| (p..m).map(|_| OnceLock::new()).collect()).collect();
    let numerators = (0..m).map(|p| (p..m).map(|_| OnceLock::new()).collect()).collect();
    let denominators = (0..m).map(|_| OnceLock::new()).collect();
    let first_label = chain.first_label;
    let record = ValidationRecord { touching, integrable: true, moments_finite: true };
    Ok(NikishinSystem {
        inner: Arc::new(Inner { chain, record, weights, numerators, denominators }),
        start: 0,
        first_label,
    })
}

impl<S: Scalar> NikishinSystem<S> {
    pub fn first_label(&self) -> usize {
        self.first_label
    }

    pub fn last_label(&self) -> usize {
        self.first_label + self.len() - 1
    }

    /// Number of generators visible through this view.
    pub fn len(&self) -> usize {
        self.inner.chain.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn record(&self) -> &ValidationRecord {
        &self.inner.record
    }

    pub fn measures(&self) -> &[AtomicMeasure<S>] {
        &self.inner.chain.measures[self.start..]
    }

    pub fn touch_points(&self) -> &[Option<Rational>] {
        &self.inner.chain.touch_points[self.start..]
    }

    pub fn chain(&self) -> GeneratorChain<S> {
        GeneratorChain {
            measures: self.measures().to_vec(),
            touch_points: self.touch_points().to_vec(),
            first_label: self.first_label,
        }
    }

    /// The generators from position `from` on, relabelled to start at `label`.
    /// Shares the transform tables with `self`.
    pub fn tail(&self, from: usize, label: usize) -> Result<Self> {
        if from >= self.len() {
            return Err(Error::IndexOutOfRange(format!("tail from position {from} of {}", self.len())));
        }
        Ok(NikishinSystem { inner: self.inner.clone(), start: self.start + from, first_label: label })
    }

    fn pos(&self, label: usize) -> Result<usize> {
        if label < self.first_label || label > self.last_label() {
            return Err(Error::IndexOutOfRange(format!(
                "label {label} outside {}..={}",
                self.first_label,
                self.last_label()
            )));
        }
        Ok(self.start + label - self.first_label)
    }

    fn pair(&self, j: usize, k: usize) -> Result<(usize, usize)> {
        let (p, q) = (self.pos(j)?, self.pos(k)?);
        if p > q {
            return Err(Error::IndexOutOfRange(format!("need j <= k, got {j} > {k}")));
        }
        Ok((p, q))
    }

    pub fn measure(&self, label: usize) -> Result<&AtomicMeasure<S>> {
        Ok(&self.inner.chain.measures[self.pos(label)?])
    }

    /// Closed bounds of Δ_label: the atom hull widened to adjacent touch points.
    pub fn hull_bounds(&self, label: usize) -> Result<(Rational, Rational)> {
        let p = self.pos(label)?;
        let (mut lo, mut hi) = self.inner.chain.measures[p].hull_bounds();
        let tps = &self.inner.chain.touch_points;
        let adjacent = [p.checked_sub(1).and_then(|i| tps.get(i)), tps.get(p)];
        for t in adjacent.into_iter().flatten().flatten() {
            if *t < lo {
                lo = t.clone();
            }
            if *t > hi {
                hi = t.clone();
            }
        }
        Ok((lo, hi))
    }

    fn weights_pos(&self, p: usize, q: usize) -> &Vec<S> {
        self.inner.weights[p][q - p].get_or_init(|| {
            let m = &self.inner.chain.measures[p];
            if p == q {
                return m.weights().to_vec();
            }
            m.atoms()
                .map(|(x, w)| w.clone() * self.eval_pos(p + 1, q, x).expect("consecutive supports are disjoint"))
                .collect()
        })
    }

    fn eval_pos(&self, p: usize, q: usize, x: &S) -> Result<S> {
        let m = &self.inner.chain.measures[p];
        let mut acc = S::zero();
        for (y, w) in m.positions().iter().zip(self.weights_pos(p, q)) {
            let d = x.clone() - y;
            if d.is_zero() {
                return Err(Error::PoleEvaluation);
            }
            acc = acc + w.clone() / &d;
        }
        Ok(acc)
    }

    /// Atom weights of s_{j,k} = ⟨σ_j,…,σ_k⟩ (which lives on the atoms of σ_j).
    pub fn product_weights(&self, j: usize, k: usize) -> Result<&[S]> {
        let (p, q) = self.pair(j, k)?;
        Ok(self.weights_pos(p, q))
    }

    /// s_{j,k} as an atomic measure.
    pub fn product_measure(&self, j: usize, k: usize) -> Result<AtomicMeasure<S>> {
        let w = self.product_weights(j, k)?.to_vec();
        let x = self.measure(j)?.positions().to_vec();
        AtomicMeasure::new(x.into_iter().zip(w).collect())
    }

    /// ŝ_{j,k}(x).
    pub fn nested_transform(&self, j: usize, k: usize, x: &S) -> Result<S> {
        let (p, q) = self.pair(j, k)?;
        self.eval_pos(p, q, x)
    }

    /// ∫ x^ν ds_{j,k}.
    pub fn product_moment_from(&self, j: usize, k: usize, nu: usize) -> Result<S> {
        let w = self.product_weights(j, k)?;
        let xs = self.measure(j)?.positions();
        Ok(xs.iter().zip(w).fold(S::zero(), |a, (x, w)| a + w.clone() * pow(x, nu)))
    }

    /// ∫ x^ν ds_{first,k}.
    pub fn product_moment(&self, k: usize, nu: usize) -> Result<S> {
        self.product_moment_from(self.first_label, k, nu)
    }

    /// D_j = Π (z − x) over the atoms of σ_j.
    pub fn denominator(&self, j: usize) -> Result<&Polynomial<S>> {
        let p = self.pos(j)?;
        Ok(self.inner.denominators[p]
            .get_or_init(|| Polynomial::from_roots(self.inner.chain.measures[p].positions())))
    }

    /// N_{j,k} with ŝ_{j,k} = N_{j,k} / D_j.
    pub fn numerator(&self, j: usize, k: usize) -> Result<&Polynomial<S>> {
        let (p, q) = self.pair(j, k)?;
        Ok(self.inner.numerators[p][q - p].get_or_init(|| {
            numerator_over_atoms(self.inner.chain.measures[p].positions(), self.weights_pos(p, q))
        }))
    }

    /// ŝ_{j,k} as an (unreduced) rational function.
    pub fn transform_rational(&self, j: usize, k: usize) -> Result<RationalFunction<S>> {
        RationalFunction::new(self.numerator(j, k)?.clone(), self.denominator(j)?.clone())
    }

    /// p_0 + Σ_{k≥1} p_k ŝ_{f,f+k−1} with f the first label, over the common denominator D_f.
    pub fn linear_form(&self, coeffs: &[Polynomial<S>]) -> Result<RationalFunction<S>> {
        if coeffs.is_empty() || coeffs.len() > self.len() + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.len()
            )));
        }
        if coeffs.len() == 1 {
            return Ok(RationalFunction::from_poly(coeffs[0].clone()));
        }
        let f = self.first_label;
        let d = self.denominator(f)?;
        let mut num = &coeffs[0] * d;
        for (k, p) in coeffs.iter().enumerate().skip(1) {
            if !p.is_zero() {
                num = &num + &(p * self.numerator(f, f + k - 1)?);
            }
        }
        RationalFunction::new(num, d.clone())
    }

    /// Direct evaluation of the same form at a point off the atoms of the first measure.
    pub fn linear_form_eval(&self, coeffs: &[Polynomial<S>], x: &S) -> Result<S> {
        let f = self.first_label;
        let mut acc = coeffs[0].eval(x);
        for (k, p) in coeffs.iter().enumerate().skip(1) {
            if !p.is_zero() {
                acc = acc + p.eval(x) * &self.nested_transform(f, f + k - 1, x)?;
            }
        }
        Ok(acc)
    }

    /// Fills every table; call before sharing across threads.
    pub fn warm(&self) {
        let m = self.inner.chain.len();
        for p in self.start..m {
            for q in p..m {
                self.weights_pos(p, q);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }
    fn meas(v: &[(i64, i64, i64)]) -> AtomicMeasure<Rational> {
        AtomicMeasure::new(v.iter().map(|&(n, d, w)| (q(n, d), q(w, 1))).collect()).unwrap()
    }

    #[test]
    fn two_chain_transforms() {
        let sys = validate_chain(GeneratorChain::new(vec![meas(&[(0, 1, 1), (1, 1, 1)]), meas(&[(2, 1, 1), (3, 1, 1)])], 0))
            .unwrap();
        assert_eq!(sys.nested_transform(1, 1, &q(0, 1)).unwrap(), q(-5, 6));
        assert_eq!(sys.nested_transform(1, 1, &q(1, 1)).unwrap(), q(-3, 2));
        assert_eq!(sys.product_moment(1, 0).unwrap(), q(-7, 3));
        assert_eq!(sys.nested_transform(0, 0, &q(2, 1)).unwrap(), q(3, 2));
        assert_eq!(sys.nested_transform(1, 1, &q(2, 1)), Err(Error::PoleEvaluation));
        assert!(sys.nested_transform(1, 0, &q(5, 1)).is_err());
        assert!(sys.nested_transform(0, 2, &q(5, 1)).is_err());
    }

    #[test]
    fn singleton_three_chain_by_hand() {
        // σ_1 = δ_0, σ_2 = 2δ_1, σ_3 = δ_3:
        // ŝ_{1,3}(z) = ŝ_{2,3}(0)/z with ŝ_{2,3}(0) = 2·σ̂_3(1)/(0−1) = 2·(−1/2)/(−1) = 1
        let sys = validate_chain(GeneratorChain::new(vec![meas(&[(0, 1, 1)]), meas(&[(1, 1, 2)]), meas(&[(3, 1, 1)])], 1))
            .unwrap();
        assert_eq!(sys.nested_transform(2, 3, &q(0, 1)).unwrap(), q(1, 1));
        assert_eq!(sys.nested_transform(1, 3, &q(5, 1)).unwrap(), q(1, 5));
        assert_eq!(sys.product_moment(3, 0).unwrap(), q(1, 1));
    }

    #[test]
    fn rational_form_and_tail_share_tables() {
        let sys = validate_chain(GeneratorChain::new(
            vec![meas(&[(0, 1, 1), (1, 2, 2), (1, 1, 1)]), meas(&[(2, 1, 1), (3, 1, 3)]), meas(&[(4, 1, 1), (5, 1, 1)])],
            0,
        ))
        .unwrap();
        let f = sys.transform_rational(0, 2).unwrap();
        for z in [q(-1, 1), q(7, 3), q(10, 1)] {
            assert_eq!(f.eval(&z).unwrap(), sys.nested_transform(0, 2, &z).unwrap());
        }
        let t = sys.tail(1, 1).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.nested_transform(1, 2, &q(0, 1)).unwrap(), sys.nested_transform(1, 2, &q(0, 1)).unwrap());
        // leading coefficient of the numerator is the total mass
        assert_eq!(f.num().lc(), sys.product_moment(2, 0).unwrap());
    }

    #[test]
    fn validation_cases() {
        let ok = GeneratorChain::new(vec![meas(&[(2, 1, 1), (3, 1, 1)]), meas(&[(4, 1, 1), (5, 1, 1)])], 1);
        let sys = validate_chain(ok).unwrap();
        assert_eq!(sys.record().touching, vec![false]);

        let touching = GeneratorChain::new(
            vec![meas(&[(1, 4, 1), (1, 2, 1), (3, 4, 1)]), meas(&[(-3, 4, 1), (-1, 2, 1), (-1, 4, 1)])],
            0,
        )
        .with_touch_points(vec![Some(q(0, 1))]);
        let sys = validate_chain(touching).unwrap();
        assert_eq!(sys.record().touching, vec![true]);
        assert_eq!(sys.hull_bounds(0).unwrap(), (q(0, 1), q(3, 4)));
        assert_eq!(sys.hull_bounds(1).unwrap(), (q(-3, 4), q(0, 1)));

        let atom_at_touch = GeneratorChain::new(
            vec![meas(&[(0, 1, 1), (1, 2, 1)]), meas(&[(-3, 4, 1), (-1, 4, 1)])],
            0,
        )
        .with_touch_points(vec![Some(q(0, 1))]);
        assert_eq!(validate_chain(atom_at_touch).unwrap_err(), Error::MassPointAtTouch(0, 1));

        let overlap = GeneratorChain::new(vec![meas(&[(0, 1, 1), (2, 1, 1)]), meas(&[(1, 1, 1), (3, 1, 1)])], 0);
        assert_eq!(validate_chain(overlap).unwrap_err(), Error::SupportsOverlap(0, 1));

        let shared = GeneratorChain::new(vec![meas(&[(0, 1, 1), (1, 1, 1)]), meas(&[(1, 1, 1), (3, 1, 1)])], 0);
        assert_eq!(validate_chain(shared).unwrap_err(), Error::MassPointAtTouch(0, 1));

        let misplaced = GeneratorChain::new(vec![meas(&[(0, 1, 1), (1, 1, 1)]), meas(&[(2, 1, 1), (3, 1, 1)])], 0)
            .with_touch_points(vec![Some(q(5, 2))]);
        assert_eq!(validate_chain(misplaced).unwrap_err(), Error::TouchPointMisplaced(0, 1));

        assert!(validate_chain(GeneratorChain::<Rational>::new(vec![], 0)).is_err());
    }
}
