use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::descartes::{coprime_mod_p, isolate_squarefree, squarefree_mod_p};
use crate::exactnum::sturm::{bisect_root, count_with_multiplicity, int_gcd, primitive, root_bound, sign_at, to_int_poly, IntPoly};
use crate::exactnum::{Ends, ExtReal, Polynomial, Rational, RootInterval, Scalar, SquareFree};
use crate::measures::ExtendedInterval;

use super::form::LinearForm;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    /// Distinct real zeros in the open hull.
    pub count_in_hull: usize,
    pub isolating_intervals: Vec<RootInterval>,
    /// Every zero in the open hull is simple.
    pub all_simple: bool,
    /// Finite zeros off the closed Δ_1, with multiplicity.
    pub count_outside_delta1: usize,
    /// The form vanishes at a finite end of the hull.
    pub endpoint_zero: bool,
}

fn finite_bounds(hull: &ExtendedInterval, bound: &Rational) -> Option<(Rational, Rational)> {
    let one = Rational::from_i64(1);
    let lo = match hull.lo() {
        ExtReal::Finite(a) => a.clone(),
        _ => -(bound.clone() + &one),
    };
    let hi = match hull.hi() {
        ExtReal::Finite(b) => b.clone(),
        _ => bound.clone() + &one,
    };
    (lo < hi).then_some((lo, hi))
}

/// Isolating intervals of the distinct real zeros of `p` in the open `hull`, a
/// simplicity flag for them, and the square-free polynomial the intervals refer to.
///
/// Inputs certified square-free modulo a prime go through Descartes bisection;
/// anything else through a Sturm sequence.
pub fn isolate_in(p: &Polynomial<Rational>, hull: &ExtendedInterval) -> Result<(Vec<RootInterval>, bool, IntPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ip = primitive(to_int_poly(p));
    if p.degree() <= 0 {
        return Ok((Vec::new(), true, ip));
    }
    let Some((lo, hi)) = finite_bounds(hull, &root_bound(&ip)) else {
        return Ok((Vec::new(), true, ip));
    };
    if squarefree_mod_p(&ip) {
        return Ok((isolate_squarefree(&ip, &lo, &hi), true, ip));
    }
    let sf = SquareFree::new(&ip)?;
    let ivs = sf.isolate(&lo, &hi)?;
    let simple = sf.was_squarefree || {
        let g = int_gcd(&ip, &to_int_poly(&p.derivative()));
        sf.signs_at_roots(&ivs, &g).iter().all(|&s| s != 0)
    };
    Ok((ivs, simple, sf.poly))
}

/// Zeros of `p` with multiplicity between `lo` and `hi` (ends as given).
pub fn count_roots(p: &Polynomial<Rational>, lo: &ExtReal, hi: &ExtReal, ends: Ends) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() <= 0 {
        return Ok(0);
    }
    let ip = primitive(to_int_poly(p));
    if !squarefree_mod_p(&ip) {
        return count_with_multiplicity(&ip, lo, hi, ends);
    }
    let Some((a, b)) = finite_bounds(&ExtendedInterval::new(lo.clone(), hi.clone())?, &root_bound(&ip)) else {
        return Ok(0);
    };
    let mut n = isolate_squarefree(&ip, &a, &b).len();
    if ends.lo_closed && lo.finite().is_some_and(|q| sign_at(&ip, q) == 0) {
        n += 1;
    }
    if ends.hi_closed && hi.finite().is_some_and(|q| sign_at(&ip, q) == 0) {
        n += 1;
    }
    Ok(n)
}

/// Finite zeros of the reduced numerator off the closed Δ_1, with multiplicity.
pub fn count_zeros_off_delta1<S: Scalar>(form: &LinearForm<S>) -> Result<usize> {
    let exact = form.exact()?;
    count_off(&exact, &exact.reduced_numerator()?)
}

pub(crate) fn count_off(form: &LinearForm<Rational>, num: &Polynomial<Rational>) -> Result<usize> {
    let deg = num.degree().max(0) as usize;
    let Some((a, b)) = form.delta1() else { return Ok(deg) };
    if deg == 0 {
        return Ok(0);
    }
    let inside = if a == b {
        // single-atom generator: Δ_1 is a point
        let mut m = 0;
        let mut p = num.clone();
        while p.degree() > 0 && p.eval(&a).is_zero() {
            p = p.div_rem(&Polynomial::x_minus(&a))?.0;
            m += 1;
        }
        m
    } else {
        count_roots(num, &ExtReal::Finite(a), &ExtReal::Finite(b), Ends::CLOSED)?
    };
    Ok(deg - inside)
}

pub fn zeros_in_hull<S: Scalar>(form: &LinearForm<S>, hull: &ExtendedInterval) -> Result<ZeroReport> {
    let exact = form.exact()?;
    let num = exact.reduced_numerator()?;
    let (ivs, all_simple, _) = isolate_in(&num, hull)?;
    let ip = to_int_poly(&num);
    let endpoint_zero = [hull.lo(), hull.hi()].iter().any(|e| e.finite().is_some_and(|q| sign_at(&ip, q) == 0));
    Ok(ZeroReport {
        count_in_hull: ivs.len(),
        isolating_intervals: ivs,
        all_simple,
        count_outside_delta1: count_off(&exact, &num)?,
        endpoint_zero,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub holds: bool,
    /// The two forms share a zero in the hull.
    pub common_zero: bool,
    pub zeros_a: Vec<RootInterval>,
    pub zeros_b: Vec<RootInterval>,
}

fn overlaps(a: &RootInterval, b: &RootInterval) -> bool {
    !(a.strictly_before(b) || b.strictly_before(a))
}

/// Between consecutive zeros of `b` in the open hull lies exactly one zero of `a`.
pub fn interlacing_check<S: Scalar>(a: &LinearForm<S>, b: &LinearForm<S>, hull: &ExtendedInterval) -> Result<InterlacingReport> {
    let na = a.exact()?.reduced_numerator()?;
    let nb = b.exact()?.reduced_numerator()?;
    let (mut za, _, pa) = isolate_in(&na, hull)?;
    let (mut zb, _, pb) = isolate_in(&nb, hull)?;
    let common = !coprime_mod_p(&pa, &pb) && {
        let g = int_gcd(&pa, &pb);
        g.len() > 1 && SquareFree::new(&pa)?.signs_at_roots(&za, &g).iter().any(|&s| s == 0)
    };
    if common {
        return Ok(InterlacingReport { holds: false, common_zero: true, zeros_a: za, zeros_b: zb });
    }
    // no shared roots, so bisection separates every pair
    loop {
        let mut clash = false;
        for i in 0..za.len() {
            for j in 0..zb.len() {
                if overlaps(&za[i], &zb[j]) {
                    clash = true;
                    za[i] = bisect_root(&pa, &za[i]);
                    zb[j] = bisect_root(&pb, &zb[j]);
                }
            }
        }
        if !clash {
            break;
        }
    }
    let holds = zb.windows(2).all(|w| za.iter().filter(|z| w[0].strictly_before(z) && z.strictly_before(&w[1])).count() == 1);
    Ok(InterlacingReport { holds, common_zero: false, zeros_a: za, zeros_b: zb })
}
