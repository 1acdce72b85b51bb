//! Product, ratio, quotient and reversal formulas for Cauchy transforms of atomic measures,
//! checked pointwise at complex sample points.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, ComplexPair, Polynomial, Rational, RationalFunction, Scalar};
use crate::measures::atomic::numerator_over_atoms;
use crate::measures::{inverse_as_rational, validate_chain, AtomicMeasure, GeneratorChain, NikishinSystem};

pub type Point = ComplexPair<Rational>;

#[derive(Clone, Debug, Serialize)]
pub struct PointResidual {
    /// `[re, im]` as rational strings.
    pub point: [String; 2],
    pub exact_zero: bool,
    /// log2 of |residual| over the largest term; `None` when the residual vanishes.
    pub log2_relative: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub id: String,
    /// Labels of the generators involved, in the order the formula uses them.
    pub measures: Vec<usize>,
    pub residuals: Vec<PointResidual>,
    /// Total-mass relation tied to the formula, where there is one.
    pub mass_relation: Option<bool>,
    pub note: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySuite {
    pub results: Vec<IdentityResult>,
    pub passed: bool,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// 10, −5, 3/2 + 2i, 1/3 − i.
pub fn default_points() -> Vec<Point> {
    vec![
        Point::real(q(10, 1)),
        Point::real(q(-5, 1)),
        Point::new(q(3, 2), q(2, 1)),
        Point::new(q(1, 3), q(-1, 1)),
    ]
}

/// Drops real points lying in any of the closed intervals.
pub fn filter_points(zs: &[Point], hulls: &[(Rational, Rational)]) -> Vec<Point> {
    zs.iter()
        .filter(|z| !z.is_real() || hulls.iter().all(|(lo, hi)| z.re < *lo || z.re > *hi))
        .cloned()
        .collect()
}

fn point_strings(z: &Point) -> [String; 2] {
    [format_rational(&z.re), format_rational(&z.im)]
}

fn lift<S: Scalar>(z: &Point, prec: usize) -> ComplexPair<S> {
    ComplexPair::new(S::from_rational(&z.re, prec), S::from_rational(&z.im, prec))
}

fn precision_of<S: Scalar>(m: &AtomicMeasure<S>) -> Option<usize> {
    m.positions().iter().chain(m.weights()).find_map(|x| x.precision())
}

fn tolerance_ok(log2_relative: f64, prec: Option<usize>) -> bool {
    match prec {
        Some(p) => log2_relative < 16.0 - p as f64,
        None => false,
    }
}

/// Sums the terms and measures the residual against the largest of them.
fn judge<S: Scalar>(z: &Point, terms: &[ComplexPair<S>], prec: Option<usize>) -> PointResidual {
    let res = terms.iter().fold(ComplexPair::zero(), |a, t| a + t.clone());
    if res.is_zero() {
        return PointResidual { point: point_strings(z), exact_zero: true, log2_relative: None, ok: true };
    }
    let scale = terms.iter().map(|t| t.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
    let rel = res.log2_abs() - scale;
    PointResidual { point: point_strings(z), exact_zero: false, log2_relative: Some(rel), ok: tolerance_ok(rel, prec) }
}

/// `a == b`, exactly or to within the working precision.
fn relation_holds<S: Scalar>(a: &S, b: &S, prec: Option<usize>) -> bool {
    let d = a.clone() - b;
    if d.is_zero() {
        return true;
    }
    let scale = a.log2_abs().max(b.log2_abs());
    tolerance_ok(d.log2_abs() - scale, prec)
}

fn in_hull(z: &Point, hull: &(Rational, Rational)) -> bool {
    z.is_real() && z.re >= hull.0 && z.re <= hull.1
}

fn check_points(zs: &[Point], hulls: &[(Rational, Rational)]) -> Result<()> {
    if zs.iter().any(|z| hulls.iter().any(|h| in_hull(z, h))) {
        return Err(Error::PoleEvaluation);
    }
    Ok(())
}

fn finish(id: &str, measures: Vec<usize>, residuals: Vec<PointResidual>, mass: Option<bool>, note: Option<String>) -> IdentityResult {
    let passed = residuals.iter().all(|r| r.ok) && mass.unwrap_or(true);
    IdentityResult { id: id.to_string(), measures, residuals, mass_relation: mass, note, passed }
}

/// ⟨a, b⟩: the atoms of `a` reweighted by b̂.
fn product<S: Scalar>(a: &AtomicMeasure<S>, b: &AtomicMeasure<S>) -> Result<AtomicMeasure<S>> {
    let atoms = a
        .atoms()
        .map(|(x, w)| Ok((x.clone(), w.clone() * &b.cauchy_eval(x)?)))
        .collect::<Result<Vec<_>>>()?;
    AtomicMeasure::new(atoms)
}

fn separated<S: Scalar>(a: &AtomicMeasure<S>, b: &AtomicMeasure<S>) -> Result<()> {
    let (alo, ahi) = a.hull_bounds();
    let (blo, bhi) = b.hull_bounds();
    if ahi < blo || bhi < alo {
        Ok(())
    } else {
        Err(Error::SupportsOverlap(0, 1))
    }
}

/// â b̂ − ⟨a,b⟩^ − ⟨b,a⟩^ at each point, plus |⟨a,b⟩| + |⟨b,a⟩| = 0.
pub fn identity_product<S: Scalar>(a: &AtomicMeasure<S>, b: &AtomicMeasure<S>, zs: &[Point]) -> Result<IdentityResult> {
    separated(a, b)?;
    check_points(zs, &[a.hull_bounds(), b.hull_bounds()])?;
    let prec = precision_of(a).or(precision_of(b));
    let (ab, ba) = (product(a, b)?, product(b, a)?);
    let residuals = zs
        .par_iter()
        .map(|z| {
            let w = lift::<S>(z, prec.unwrap_or(0));
            let lhs = a.cauchy_eval_complex(&w)? * b.cauchy_eval_complex(&w)?;
            let terms = [lhs, -ab.cauchy_eval_complex(&w)?, -ba.cauchy_eval_complex(&w)?];
            Ok(judge(z, &terms, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    let mass = relation_holds(&ab.total_mass(), &-ba.total_mass(), prec);
    Ok(finish("product", vec![0, 1], residuals, Some(mass), None))
}

fn rational_note<S: Scalar>() -> Option<String> {
    (!S::EXACT).then(|| "evaluated exactly on the dyadic values of the big-float atoms".to_string())
}

fn eval_at(f: &RationalFunction<Rational>, z: &Point) -> Result<Point> {
    f.eval_complex(z)
}

/// The two ratio formulas for â / ⟨a,b⟩^ and ⟨a,b⟩^ / â.
///
/// With τ_{a,b} the inverse measure of ⟨a,b⟩ and τ_{a,a} that of a:
///
/// - `ratio-mixed`: â/⟨a,b⟩^ = |a|/|⟨a,b⟩| + ∫ (⟨b,a⟩^/b̂)(x) dτ_{a,b}(x)/(z − x)
/// - `ratio-root`: ⟨a,b⟩^/â = |⟨a,b⟩|/|a| − ∫ ⟨b,a⟩^(x) dτ_{a,a}(x)/(z − x)
///
/// All objects are rational functions, so this runs in exact arithmetic
/// even for big-float input.
pub fn identity_ratio<S: Scalar>(a: &AtomicMeasure<S>, b: &AtomicMeasure<S>, zs: &[Point]) -> Result<Vec<IdentityResult>> {
    separated(a, b)?;
    check_points(zs, &[a.hull_bounds(), b.hull_bounds()])?;
    let (a, b) = (a.to_rational(), b.to_rational());
    let (ab, ba) = (product(&a, &b)?, product(&b, &a)?);
    let (mass_a, mass_ab) = (a.total_mass(), ab.total_mass());

    // ⟨b,a⟩^/b̂ = N_{b,a}/N_b: the common denominator over the atoms of b cancels
    let g_mixed = RationalFunction::new(ba.cauchy_numerator(), b.cauchy_numerator())?;
    let int_mixed = inverse_as_rational(&ab)?.integrate(&g_mixed)?;
    let int_root = inverse_as_rational(&a)?.integrate(&ba.cauchy_rational())?;

    let mixed = zs
        .par_iter()
        .map(|z| {
            let lhs = a.cauchy_eval_complex(z)? / ab.cauchy_eval_complex(z)?;
            let terms = [lhs, Point::real(-(mass_a.clone() / &mass_ab)), -eval_at(&int_mixed, z)?];
            Ok(judge(z, &terms, None))
        })
        .collect::<Result<Vec<_>>>()?;
    let root = zs
        .par_iter()
        .map(|z| {
            let lhs = ab.cauchy_eval_complex(z)? / a.cauchy_eval_complex(z)?;
            let terms = [lhs, Point::real(-(mass_ab.clone() / &mass_a)), eval_at(&int_root, z)?];
            Ok(judge(z, &terms, None))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        finish("ratio-mixed", vec![0, 1], mixed, None, rational_note::<S>()),
        finish("ratio-root", vec![0, 1], root, None, rational_note::<S>()),
    ])
}

/// ŝ_{f,k}/ŝ_{f,f} = |s_{f,k}|/|σ_f| − ∫ G(x) dτ_{f,f}(x)/(z − x), f the first label,
/// with G(x) = ∫ σ̂_f(t) ds_{f+1,k}(t)/(x − t) and τ_{f,f} the inverse measure of σ_f.
pub fn identity_quotient<S: Scalar>(sys: &NikishinSystem<S>, k: usize, zs: &[Point]) -> Result<IdentityResult> {
    let f = sys.first_label();
    if k <= f || k > sys.last_label() {
        return Err(Error::IndexOutOfRange(format!("quotient needs {} <= k <= {}, got {k}", f + 1, sys.last_label())));
    }
    let r = validate_chain(sys.chain().to_rational())?;
    let sf = r.measure(f)?;
    check_points(zs, &[sf.hull_bounds()])?;
    let sfk = r.product_measure(f, k)?;
    let next = r.measure(f + 1)?;
    let ts = next.positions();
    let cs = ts
        .iter()
        .zip(r.product_weights(f + 1, k)?)
        .map(|(t, w)| Ok(sf.cauchy_eval(t)? * w))
        .collect::<Result<Vec<_>>>()?;
    let g = RationalFunction::new(numerator_over_atoms(ts, &cs), Polynomial::from_roots(ts))?;
    let int = inverse_as_rational(sf)?.integrate(&g)?;
    let c = sfk.total_mass() / sf.total_mass();
    let residuals = zs
        .par_iter()
        .map(|z| {
            let lhs = sfk.cauchy_eval_complex(z)? / sf.cauchy_eval_complex(z)?;
            let terms = [lhs, Point::real(-c.clone()), eval_at(&int, z)?];
            Ok(judge(z, &terms, None))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish("quotient", vec![f, k], residuals, None, rational_note::<S>()))
}

fn reversed<S: Scalar>(sys: &NikishinSystem<S>) -> Result<NikishinSystem<S>> {
    let mut ms = sys.measures().to_vec();
    ms.reverse();
    let mut tps = sys.touch_points().to_vec();
    tps.reverse();
    validate_chain(GeneratorChain::new(ms, 0).with_touch_points(tps))
}

/// Reversal formula for a chain σ_1, …, σ_m (m ≥ 2):
///
/// ⟨σ_m,…,σ_1⟩^ + Σ_{k=1}^{m−1} (−1)^k ⟨σ_m,…,σ_{k+1}⟩^ ⟨σ_1,…,σ_k⟩^ + (−1)^m ⟨σ_1,…,σ_m⟩^ = 0,
///
/// together with |⟨σ_m,…,σ_1⟩| = (−1)^{m−1} |⟨σ_1,…,σ_m⟩|.
pub fn identity_reversal<S: Scalar>(sys: &NikishinSystem<S>, zs: &[Point]) -> Result<IdentityResult> {
    let m = sys.len();
    if m < 2 {
        return Err(Error::Precondition("reversal needs at least two generators".into()));
    }
    let f = sys.first_label();
    let rev = reversed(sys)?;
    check_points(zs, &[sys.measure(f)?.hull_bounds(), rev.measure(0)?.hull_bounds()])?;
    let prec = precision_of(sys.measure(f)?);
    let x = rev.product_measure(0, m - 1)?;
    let y = sys.product_measure(f, f + m - 1)?;
    // ⟨σ_m,…,σ_{k+1}⟩ and ⟨σ_1,…,σ_k⟩ for k = 1..m−1
    let mixed = (1..m)
        .map(|k| Ok((rev.product_measure(0, m - 1 - k)?, sys.product_measure(f, f + k - 1)?)))
        .collect::<Result<Vec<_>>>()?;
    let sign = |k: usize| if k % 2 == 0 { S::one() } else { -S::one() };
    let residuals = zs
        .par_iter()
        .map(|z| {
            let w = lift::<S>(z, prec.unwrap_or(0));
            let mut terms = vec![x.cauchy_eval_complex(&w)?];
            for (k, (a, b)) in mixed.iter().enumerate() {
                terms.push((a.cauchy_eval_complex(&w)? * b.cauchy_eval_complex(&w)?).scale(&sign(k + 1)));
            }
            terms.push(y.cauchy_eval_complex(&w)?.scale(&sign(m)));
            Ok(judge(z, &terms, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    let mass = relation_holds(&x.total_mass(), &(y.total_mass() * &sign(m - 1)), prec);
    Ok(finish("reversal", (f..f + m).collect(), residuals, Some(mass), None))
}

fn window<S: Scalar>(sys: &NikishinSystem<S>, from: usize, len: usize) -> Result<NikishinSystem<S>> {
    let ms = sys.measures()[from..from + len].to_vec();
    let tps = sys.touch_points()[from..from + len - 1].to_vec();
    validate_chain(GeneratorChain::new(ms, sys.first_label() + from).with_touch_points(tps))
}

fn relabel(mut r: IdentityResult, labels: Vec<usize>) -> IdentityResult {
    r.measures = labels;
    r
}

/// Every formula on every applicable piece of the system: products and ratios for
/// consecutive generators in both orders, quotients for each k, reversal on every
/// window of two or more generators. Real sample points inside a hull are dropped.
pub fn identity_suite<S: Scalar>(sys: &NikishinSystem<S>, zs: &[Point]) -> Result<IdentitySuite> {
    let f = sys.first_label();
    let hulls = sys.measures().iter().map(|m| m.hull_bounds()).collect::<Vec<_>>();
    let zs = filter_points(zs, &hulls);
    let ms = sys.measures();
    let mut results = Vec::new();
    for p in 0..ms.len().saturating_sub(1) {
        for (i, j) in [(p, p + 1), (p + 1, p)] {
            let labels = vec![f + i, f + j];
            results.push(relabel(identity_product(&ms[i], &ms[j], &zs)?, labels.clone()));
            for r in identity_ratio(&ms[i], &ms[j], &zs)? {
                results.push(relabel(r, labels.clone()));
            }
        }
    }
    for k in f + 1..=sys.last_label() {
        results.push(identity_quotient(sys, k, &zs)?);
    }
    for len in 2..=ms.len() {
        for from in 0..=ms.len() - len {
            results.push(identity_reversal(&window(sys, from, len)?, &zs)?);
        }
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(IdentitySuite { results, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::BigFloat;
    use crate::measures::desk;

    fn atoms(v: &[(i64, i64, i64)]) -> AtomicMeasure<Rational> {
        AtomicMeasure::new(v.iter().map(|&(n, d, w)| (q(n, d), q(w, 1))).collect()).unwrap()
    }

    #[test]
    fn product_of_two_atoms() {
        // 1/(z(z − 1)) = −1/z + 1/(z − 1)
        let (a, b) = (atoms(&[(0, 1, 1)]), atoms(&[(1, 1, 1)]));
        let r = identity_product(&a, &b, &default_points()[2..]).unwrap();
        assert!(r.passed && r.residuals.iter().all(|p| p.exact_zero));
        assert_eq!(product(&a, &b).unwrap().weights(), &[q(-1, 1)]);
        assert_eq!(product(&b, &a).unwrap().weights(), &[q(1, 1)]);
    }

    #[test]
    fn overlapping_hulls_rejected() {
        let a = atoms(&[(0, 1, 1), (2, 1, 1)]);
        let b = atoms(&[(1, 1, 1)]);
        assert!(matches!(identity_product(&a, &b, &default_points()), Err(Error::SupportsOverlap(..))));
        assert!(identity_product(&a, &atoms(&[(3, 1, 1)]), &[Point::real(q(1, 1))]).is_err());
    }

    #[test]
    fn two_atoms_against_one_by_hand() {
        // a = δ_0 + δ_1, b = δ_2: 1/â = z/2 − 1/4 − (1/8)/(z − 1/2), ⟨b,a⟩^ (1/2) = −1,
        // so ⟨a,b⟩^/â = −3/4 − (1/8)/(z − 1/2) = −(3z − 1)/(2(2z − 1))
        let (a, b) = (atoms(&[(0, 1, 1), (1, 1, 1)]), atoms(&[(2, 1, 1)]));
        let inv = inverse_as_rational(&a).unwrap();
        assert_eq!(inv.tau.num().coeffs(), &[q(-1, 8)]);
        assert_eq!(inv.tau.den().coeffs(), &[q(-1, 2), q(1, 1)]);
        let ab = product(&a, &b).unwrap();
        let z = q(10, 1);
        assert_eq!(ab.cauchy_eval(&z).unwrap() / a.cauchy_eval(&z).unwrap(), q(-29, 38));
        let rs = identity_ratio(&a, &b, &default_points()).unwrap();
        assert!(rs.iter().all(|r| r.passed), "{rs:#?}");
    }

    #[test]
    fn ratio_constant_is_the_limit_at_infinity() {
        let (a, b) = (atoms(&[(0, 1, 1), (1, 2, 3), (1, 1, 2)]), atoms(&[(2, 1, 1), (3, 1, 1)]));
        let ab = product(&a, &b).unwrap();
        let c = ab.total_mass() / a.total_mass();
        let big = q(10i64.pow(12), 1);
        let v = ab.cauchy_eval(&big).unwrap() / a.cauchy_eval(&big).unwrap();
        assert!((v - c).abs() < q(1, 10i64.pow(9)));
    }

    #[test]
    fn d1_suite_is_exact() {
        let sys = validate_chain(desk::d1_chain()).unwrap();
        let s = identity_suite(&sys, &default_points()).unwrap();
        assert!(s.passed);
        assert!(s.results.iter().all(|r| r.residuals.len() == 4 && r.residuals.iter().all(|p| p.exact_zero)));
        // 2 ordered pairs per neighbour × 3 formulas, 2 quotients, 3 reversal windows
        assert_eq!(s.results.len(), 2 * 2 * 3 + 2 + 3);
    }

    #[test]
    fn touching_suite_is_exact() {
        let sys = validate_chain(desk::touching_chain()).unwrap();
        let s = identity_suite(&sys, &default_points()).unwrap();
        assert!(s.passed, "{s:#?}");
    }

    #[test]
    fn reversal_on_single_atoms() {
        // σ_1 = δ_0, σ_2 = δ_1, σ_3 = δ_3: every term is a product of simple fractions
        let chain = GeneratorChain::new(vec![atoms(&[(0, 1, 1)]), atoms(&[(1, 1, 1)]), atoms(&[(3, 1, 1)])], 1);
        let sys = validate_chain(chain).unwrap();
        let r = identity_reversal(&sys, &default_points()).unwrap();
        assert!(r.passed && r.mass_relation == Some(true));
        // ⟨σ_1,σ_2,σ_3⟩ = δ_0 · (1/(0 − 1)) · (1/(1 − 3)) = δ_0/2
        assert_eq!(sys.product_measure(1, 3).unwrap().total_mass(), q(1, 2));
    }

    #[test]
    fn reversal_mass_on_d1() {
        let sys = validate_chain(desk::d1_chain()).unwrap();
        let rev = reversed(&sys).unwrap();
        // m = 3: the sign is +1
        assert_eq!(rev.product_measure(0, 2).unwrap().total_mass(), sys.product_measure(0, 2).unwrap().total_mass());
        let two = window(&sys, 0, 2).unwrap();
        let rev2 = reversed(&two).unwrap();
        assert_eq!(rev2.product_measure(0, 1).unwrap().total_mass(), -two.product_measure(0, 1).unwrap().total_mass());
    }

    #[test]
    fn reversal_for_two_matches_product() {
        let (a, b) = (atoms(&[(0, 1, 1), (1, 2, 2)]), atoms(&[(1, 1, 1), (2, 1, 3)]));
        let sys = validate_chain(GeneratorChain::new(vec![a.clone(), b.clone()], 0)).unwrap();
        let zs = default_points();
        let r = identity_reversal(&sys, &zs).unwrap();
        let p = identity_product(&a, &b, &zs).unwrap();
        assert!(r.passed && p.passed);
    }

    #[test]
    fn float_suite_within_precision() {
        let sys = validate_chain(desk::arcsine_lebesgue_chain(6, 192).unwrap()).unwrap();
        let s = identity_suite::<BigFloat>(&sys, &default_points()).unwrap();
        assert!(s.passed, "{s:#?}");
        let prod = s.results.iter().find(|r| r.id == "product").unwrap();
        assert!(prod.residuals.iter().all(|p| p.exact_zero || p.log2_relative.unwrap() < 16.0 - 192.0));
    }

    #[test]
    fn points_filtered_against_hulls() {
        let zs = filter_points(&default_points(), &[(q(-6, 1), q(-4, 1))]);
        assert_eq!(zs.len(), 3);
        assert!(zs.iter().all(|z| z.re != q(-5, 1)));
    }
}
