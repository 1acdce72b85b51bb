use crate::error::{Error, Result};
use crate::exactnum::{nullspace, Matrix, Polynomial, RationalFunction, Scalar};
use crate::measures::NikishinSystem;

use super::index::{CombinedIndex, MultiIndex};
use super::pair::CompatiblePair;

/// 𝔸_n = (a_0, …, a_{m₁}) and the scalar form 𝒜_n = a_0 + Σ a_k ŝ¹_{1,k}.
#[derive(Clone, Debug)]
pub struct VectorPolynomialSolution<S> {
    pub a: Vec<Polynomial<S>>,
    pub index: CombinedIndex,
    pub kernel_dimension: usize,
    pub form: RationalFunction<S>,
}

#[derive(Clone, Debug)]
pub struct TypeIISolution<S> {
    pub q: Polynomial<S>,
    pub p: Vec<Polynomial<S>>,
    /// Order at ∞ of Q ŝ_{0,k} − P_k; `None` when the remainder vanishes identically.
    pub remainder_orders: Vec<Option<usize>>,
    /// Leading coefficient A_{n,k} of each remainder (zero when it vanishes).
    pub remainder_leading: Vec<S>,
    pub index: MultiIndex,
    pub kernel_dimension: usize,
}

#[derive(Clone, Debug)]
pub struct TypeISolution<S> {
    pub a: Vec<Polynomial<S>>,
    pub b: Polynomial<S>,
    /// Order at ∞ of Σ a_j ŝ_{0,j} − b; `None` when it vanishes identically.
    pub remainder_order: Option<usize>,
    pub index: MultiIndex,
    pub kernel_dimension: usize,
}

fn check_index<S: Scalar>(pair: &CompatiblePair<S>, n: &CombinedIndex) -> Result<()> {
    if n.n1.len() != pair.m1() + 1 || n.n2.len() != pair.m2() + 1 {
        return Err(Error::InvalidIndex(format!(
            "{n} does not fit m1 = {}, m2 = {}",
            pair.m1(),
            pair.m2()
        )));
    }
    let atoms = pair.root().len();
    if n.n2.norm() > atoms {
        return Err(Error::AtomBudget(format!(
            "|n2| = {} exceeds the {atoms} atoms of the root measure",
            n.n2.norm()
        )));
    }
    Ok(())
}

/// Rows (j, ν), columns (k, r): entry c_{j,k,ν+r}.
pub fn moment_matrix<S: Scalar>(pair: &CompatiblePair<S>, n: &CombinedIndex) -> Result<Matrix<S>> {
    check_index(pair, n)?;
    let rows = n.n2.norm();
    let cols = n.n1.norm();
    let mut data = Vec::with_capacity(rows * cols);
    for (j, &n2j) in n.n2.components().iter().enumerate() {
        for nu in 0..n2j {
            for (k, &n1k) in n.n1.components().iter().enumerate() {
                for r in 0..n1k {
                    data.push(pair.mixed_moment(j, k, nu + r)?);
                }
            }
        }
    }
    Matrix::new(rows, cols, data)
}

/// Splits a flat coefficient vector into the polynomials a_0, …, a_{m₁}.
pub fn split_coefficients<S: Scalar>(v: &[S], n1: &MultiIndex) -> Vec<Polynomial<S>> {
    let mut out = Vec::with_capacity(n1.len());
    let mut at = 0;
    for &nk in n1.components() {
        out.push(Polynomial::new(v[at..at + nk].to_vec()));
        at += nk;
    }
    out
}

/// Scales so the last a_k reaching its top degree n_{1,k} − 1 is monic.
fn normalize<S: Scalar>(v: Vec<S>, n1: &MultiIndex) -> Vec<S> {
    let mut at = 0;
    let mut pivot = None;
    for &nk in n1.components() {
        at += nk;
        if nk > 0 && !v[at - 1].is_zero() {
            pivot = Some(at - 1);
        }
    }
    let pivot = pivot.or_else(|| v.iter().rposition(|x| !x.is_zero())).expect("nonzero kernel vector");
    let inv = S::one() / &v[pivot];
    v.into_iter().map(|x| x * &inv).collect()
}

/// 𝒜_n as a rational function over the atoms of σ¹_1.
pub fn scalar_form<S: Scalar>(pair: &CompatiblePair<S>, a: &[Polynomial<S>]) -> Result<RationalFunction<S>> {
    match pair.tail1() {
        None => Ok(RationalFunction::from_poly(a[0].clone())),
        Some(t) => t.linear_form(a),
    }
}

pub fn solve_mixed<S: Scalar>(pair: &CompatiblePair<S>, n: &CombinedIndex) -> Result<VectorPolynomialSolution<S>> {
    let m = moment_matrix(pair, n)?;
    let basis = nullspace(&m)?;
    if basis.is_empty() {
        return Err(Error::Internal(format!("trivial kernel at {n}: the moment matrix is malformed")));
    }
    let kernel_dimension = basis.len();
    let v = normalize(basis.into_iter().next().expect("nonempty"), &n.n1);
    let a = split_coefficients(&v, &n.n1);
    let form = scalar_form(pair, &a)?;
    Ok(VectorPolynomialSolution { a, index: n.clone(), kernel_dimension, form })
}

/// ∫ x^ν U_j 𝒜_n dσ_0 for every row (j, ν), by direct summation over the root atoms.
pub fn orthogonality_residuals<S: Scalar>(pair: &CompatiblePair<S>, sol: &VectorPolynomialSolution<S>) -> Result<Vec<S>> {
    let root = pair.root();
    let mut form_vals = Vec::with_capacity(root.len());
    for x in root.positions() {
        let mut acc = sol.a[0].eval(x);
        for (k, p) in sol.a.iter().enumerate().skip(1) {
            if !p.is_zero() {
                acc = acc + p.eval(x) * &pair.v_value(k, x)?;
            }
        }
        form_vals.push(acc);
    }
    let mut out = Vec::new();
    for (j, &n2j) in sol.index.n2.components().iter().enumerate() {
        // w_i U_j(x_i) 𝒜(x_i) x_i^ν, stepping ν
        let mut terms = Vec::with_capacity(root.len());
        for ((x, w), f) in root.atoms().zip(&form_vals) {
            terms.push(w.clone() * &pair.u_value(j, x)? * f);
        }
        for _ in 0..n2j {
            out.push(terms.iter().fold(S::zero(), |a, b| a + b));
            terms = terms.into_iter().zip(root.positions()).map(|(t, x)| t * x).collect();
        }
    }
    Ok(out)
}

/// Scale of the residuals: ∫ |x|^ν |U_j 𝒜_n| d|σ_0| summed the same way, for relative checks.
pub fn orthogonality_scale<S: Scalar>(pair: &CompatiblePair<S>, sol: &VectorPolynomialSolution<S>) -> Result<S> {
    let root = pair.root();
    let mut best = S::zero();
    for (x, w) in root.atoms() {
        let mut f = sol.a[0].eval(x).abs();
        for (k, p) in sol.a.iter().enumerate().skip(1) {
            f = f + (p.eval(x) * &pair.v_value(k, x)?).abs();
        }
        let maxu = (0..=pair.m2()).map(|j| pair.u_value(j, x).map(|u| u.abs())).collect::<Result<Vec<_>>>()?;
        let maxu = maxu.into_iter().fold(S::zero(), |a, b| if b > a { b } else { a });
        let top = sol.index.n2.components().iter().copied().max().unwrap_or(0);
        let xp = (0..top.max(1)).fold(S::one(), |a, _| {
            let ax = x.abs();
            if ax > S::one() { a * &ax } else { a }
        });
        let t = w.abs() * &f * &maxu * &xp;
        best = best + t;
    }
    Ok(best)
}

fn remainder_order<S: Scalar>(r: &Polynomial<S>, d: &Polynomial<S>) -> Option<usize> {
    (!r.is_zero()).then(|| (d.degree() - r.degree()) as usize)
}

pub fn solve_type2<S: Scalar>(sys: &NikishinSystem<S>, n: &MultiIndex) -> Result<TypeIISolution<S>> {
    if sys.first_label() != 0 {
        return Err(Error::Precondition("type II needs a system starting at σ_0".into()));
    }
    let pair = CompatiblePair::type2(sys)?;
    solve_type2_in(&pair, n)
}

/// Type II with a prepared pair (first system = σ_0 alone).
pub fn solve_type2_in<S: Scalar>(pair: &CompatiblePair<S>, n: &MultiIndex) -> Result<TypeIISolution<S>> {
    if pair.m1() != 0 {
        return Err(Error::Precondition("type II pair must have m1 = 0".into()));
    }
    let ci = CombinedIndex::new(MultiIndex::new(vec![n.norm() + 1])?, n.clone())?;
    let sol = solve_mixed(pair, &ci)?;
    let q = sol.a[0].clone();
    let sys = pair.s2();
    let d0 = sys.denominator(0)?;
    let mut p = Vec::new();
    let mut orders = Vec::new();
    let mut leading = Vec::new();
    for k in 0..=pair.m2() {
        let (pk, r) = (&q * sys.numerator(0, k)?).div_rem(d0)?;
        orders.push(remainder_order(&r, d0));
        leading.push(if r.is_zero() { S::zero() } else { r.lc() });
        p.push(pk);
    }
    Ok(TypeIISolution {
        q,
        p,
        remainder_orders: orders,
        remainder_leading: leading,
        index: n.clone(),
        kernel_dimension: sol.kernel_dimension,
    })
}

pub fn solve_type1<S: Scalar>(sys: &NikishinSystem<S>, n: &MultiIndex) -> Result<TypeISolution<S>> {
    if sys.first_label() != 0 {
        return Err(Error::Precondition("type I needs a system starting at σ_0".into()));
    }
    let pair = CompatiblePair::type1(sys)?;
    solve_type1_in(&pair, n)
}

/// Type I with a prepared pair (second system = σ_0 alone).
pub fn solve_type1_in<S: Scalar>(pair: &CompatiblePair<S>, n: &MultiIndex) -> Result<TypeISolution<S>> {
    if pair.m2() != 0 {
        return Err(Error::Precondition("type I pair must have m2 = 0".into()));
    }
    if n.norm() == 0 {
        return Err(Error::InvalidIndex("type I needs |n| >= 1".into()));
    }
    let ci = CombinedIndex::new(n.clone(), MultiIndex::new(vec![n.norm() - 1])?)?;
    let sol = solve_mixed(pair, &ci)?;
    let sys = pair.s1();
    let d0 = sys.denominator(0)?;
    let mut num = Polynomial::zero();
    for (j, a) in sol.a.iter().enumerate() {
        if !a.is_zero() {
            num = &num + &(a * sys.numerator(0, j)?);
        }
    }
    let (b, r) = num.div_rem(d0)?;
    Ok(TypeISolution {
        remainder_order: remainder_order(&r, d0),
        a: sol.a,
        b,
        index: n.clone(),
        kernel_dimension: sol.kernel_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::measures::{desk, validate_chain, AtomicMeasure, GeneratorChain};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }
    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classical_orthogonal_polynomials() {
        let sys = validate_chain(desk::one_measure_chain()).unwrap();
        let s1 = solve_type2(&sys, &mi(&[1])).unwrap();
        assert_eq!(s1.q, Polynomial::new(vec![q(-1, 1), q(1, 1)]));
        let s2 = solve_type2(&sys, &mi(&[2])).unwrap();
        assert_eq!(s2.q, Polynomial::new(vec![q(1, 3), q(-2, 1), q(1, 1)]));
        assert_eq!(s2.q.to_string(), "1/3, -2, 1");
        assert!(s2.remainder_orders[0].unwrap() >= 3);
        let s0 = solve_type2(&sys, &mi(&[0])).unwrap();
        assert_eq!(s0.q, Polynomial::one());
        assert!(s0.p[0].is_zero());
    }

    #[test]
    fn trivial_mixed_index() {
        let sys = validate_chain(desk::one_measure_chain()).unwrap();
        let pair = CompatiblePair::type2(&sys).unwrap();
        let n = CombinedIndex::parse("((1);(0))").unwrap();
        let sol = solve_mixed(&pair, &n).unwrap();
        assert_eq!(sol.a, vec![Polynomial::one()]);
        assert_eq!(sol.kernel_dimension, 1);
    }

    #[test]
    fn d1_first_mixed_index() {
        let c = desk::d1_chain();
        let pair = CompatiblePair::from_chains(
            GeneratorChain::new(c.measures[..2].to_vec(), 0),
            GeneratorChain::new(vec![c.measures[0].clone()], 0),
        )
        .unwrap();
        let n = CombinedIndex::parse("((1,1);(1))").unwrap();
        let m = moment_matrix(&pair, &n).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        // c_{0,0,0} = |σ_0| = 1 and c_{0,1,0} = |s_{0,1}|
        assert_eq!(m.get(0, 0), &q(1, 1));
        let sys = validate_chain(c).unwrap();
        assert_eq!(m.get(0, 1), &sys.product_moment(1, 0).unwrap());
        let sol = solve_mixed(&pair, &n).unwrap();
        assert_eq!(sol.kernel_dimension, 1);
        assert!(orthogonality_residuals(&pair, &sol).unwrap().iter().all(|r| r.is_zero()));
        // a_1 is made monic
        assert_eq!(sol.a[1], Polynomial::one());
    }

    #[test]
    fn type2_remainders_and_orthogonality_on_a_two_chain() {
        let sys = validate_chain(GeneratorChain::new(desk::d1_chain().measures[..2].to_vec(), 0)).unwrap();
        for n in [mi(&[1, 1]), mi(&[2, 1]), mi(&[2, 2]), mi(&[1, 3])] {
            let s = solve_type2(&sys, &n).unwrap();
            assert_eq!(s.kernel_dimension, 1);
            assert_eq!(s.q.degree(), n.norm() as isize);
            for (k, o) in s.remainder_orders.iter().enumerate() {
                assert!(o.unwrap() >= n.components()[k] + 1, "{n} k={k}");
            }
            for k in 0..2 {
                for nu in 0..n.components()[k] {
                    let w = sys.product_weights(0, k).unwrap();
                    let xs = sys.measure(0).unwrap().positions();
                    let r = xs.iter().zip(w).fold(q(0, 1), |a, (x, w)| {
                        a + w.clone() * s.q.eval(x) * (0..nu).fold(q(1, 1), |p, _| p * x)
                    });
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn type1_order_and_collinearity() {
        let sys = validate_chain(GeneratorChain::new(desk::d1_chain().measures[..2].to_vec(), 0)).unwrap();
        let n = mi(&[1, 1]);
        let a = solve_type1(&sys, &n).unwrap();
        let b = solve_type1(&sys, &n).unwrap();
        assert_eq!(a.a, b.a);
        assert!(a.remainder_order.unwrap() >= 2);
        let one = solve_type1(&validate_chain(desk::one_measure_chain()).unwrap(), &mi(&[1])).unwrap();
        assert!(one.b.is_zero());
        assert_eq!(one.a, vec![Polynomial::one()]);
        assert!(solve_type1(&sys, &mi(&[0, 0])).is_err());
    }

    #[test]
    fn atom_budget_enforced() {
        let s = AtomicMeasure::uniform(vec![q(0, 1), q(1, 1)]).unwrap();
        let sys = validate_chain(GeneratorChain::new(vec![s], 0)).unwrap();
        assert!(solve_type2(&sys, &mi(&[2])).is_ok());
        assert!(matches!(solve_type2(&sys, &mi(&[3])), Err(Error::AtomBudget(_))));
    }
}
