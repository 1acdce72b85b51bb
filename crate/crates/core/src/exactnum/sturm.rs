//! Exact real-root counting and isolation for rational polynomials.
//!
//! All work is done on primitive integer polynomials; a rational
//! polynomial is first scaled by a positive integer, which preserves signs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::Polynomial;
use super::scalar::{format_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// Point of the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    fn rank(&self) -> i32 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::Finite(_) => 0,
            ExtReal::PosInf => 1,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            _ => self.rank().partial_cmp(&other.rank()),
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(q: Rational) -> Self {
        ExtReal::Finite(q)
    }
}

/// Which ends of a counting interval are closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ends {
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Ends {
    pub const OPEN: Ends = Ends { lo_closed: false, hi_closed: false };
    pub const CLOSED: Ends = Ends { lo_closed: true, hi_closed: true };
}

/// Integer polynomial, lowest degree first, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the (positive) content.
pub fn primitive(p: IntPoly) -> IntPoly {
    let p = trim(p);
    let g = content(&p);
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Positive integer multiple of `p`, made primitive.
pub fn to_int_poly(p: &Polynomial<Rational>) -> IntPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect(),
    )
}

pub fn from_int_poly(p: &[BigInt]) -> Polynomial<Rational> {
    Polynomial::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn deg(p: &[BigInt]) -> isize {
    p.len() as isize - 1
}

fn int_derivative(p: &[BigInt]) -> IntPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Pseudo-remainder `lc(b)^(da−db+1)·a mod b`, sign-corrected so it is a
/// positive multiple of the true remainder.
fn sprem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = deg(b);
    let mut r: IntPoly = a.to_vec();
    if deg(&r) < db {
        return r;
    }
    let lb = b.last().unwrap().clone();
    let delta = (deg(&r) - db + 1) as u32;
    let mut steps = 0u32;
    while deg(&r) >= db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = (deg(&r) - db) as usize;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = trim(r);
        steps += 1;
    }
    // account for skipped steps so the multiplier is exactly lb^delta
    if steps < delta {
        let extra = num_traits::pow(lb.clone(), (delta - steps) as usize);
        for c in r.iter_mut() {
            *c *= &extra;
        }
    }
    if lb.is_negative() && delta % 2 == 1 {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    r
}

/// Primitive gcd of two integer polynomials (positive leading coefficient).
pub fn int_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(sprem(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Exact quotient `a / b` for integer polynomials known to divide.
pub fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let q = from_int_poly(a)
        .div_rem(&from_int_poly(b))
        .expect("nonzero divisor")
        .0;
    to_int_poly(&q)
}

/// Sign of `p(q)` for rational `q`.
pub fn sign_at(p: &[BigInt], q: &Rational) -> i32 {
    if p.is_empty() {
        return 0;
    }
    // Horner on n/d, scaled by d^deg: keeps everything integral.
    let (n, d) = (q.numer(), q.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_at_ext(p: &[BigInt], x: &ExtReal) -> i32 {
    match x {
        ExtReal::Finite(q) => sign_at(p, q),
        ExtReal::PosInf => p.last().map_or(0, |c| if c.is_positive() { 1 } else { -1 }),
        ExtReal::NegInf => p.last().map_or(0, |c| {
            let s = if c.is_positive() { 1 } else { -1 };
            if deg(p) % 2 == 0 {
                s
            } else {
                -s
            }
        }),
    }
}

/// Sturm sequence of a polynomial: p, p′, then negated remainders.
#[derive(Clone, Debug)]
pub struct SturmChain {
    pub chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &[BigInt]) -> Self {
        let p = primitive(p.to_vec());
        let mut chain = vec![p.clone()];
        let d = primitive(int_derivative(&p));
        if !d.is_empty() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = sprem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                chain.push(primitive(r.into_iter().map(|c| -c).collect()));
            }
        }
        SturmChain { chain }
    }

    /// The last element is gcd(p, p′) up to a constant.
    pub fn is_squarefree(&self) -> bool {
        deg(self.chain.last().unwrap()) <= 0
    }

    pub fn gcd_with_derivative(&self) -> &IntPoly {
        self.chain.last().unwrap()
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &ExtReal) -> usize {
        let mut last = 0;
        let mut v = 0;
        for p in &self.chain {
            let s = sign_at_ext(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct roots in `(lo, hi]` when the chain is square-free.
    fn count_half_open(&self, lo: &ExtReal, hi: &ExtReal) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Square-free part of a nonzero integer polynomial, with its Sturm chain.
pub struct SquareFree {
    pub poly: IntPoly,
    pub chain: SturmChain,
    /// True when the input had no repeated roots.
    pub was_squarefree: bool,
}

impl SquareFree {
    pub fn new(p: &[BigInt]) -> Result<Self> {
        let p = primitive(p.to_vec());
        if p.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let chain = SturmChain::new(&p);
        if chain.is_squarefree() {
            return Ok(SquareFree { poly: p, chain, was_squarefree: true });
        }
        let q = int_exact_div(&p, chain.gcd_with_derivative());
        let chain = SturmChain::new(&q);
        Ok(SquareFree { poly: q, chain, was_squarefree: false })
    }

    pub fn from_rational(p: &Polynomial<Rational>) -> Result<Self> {
        Self::new(&to_int_poly(p))
    }

    /// Number of distinct real roots between `lo` and `hi` with the given end openness.
    pub fn count(&self, lo: &ExtReal, hi: &ExtReal, ends: Ends) -> Result<usize> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        let mut n = self.chain.count_half_open(lo, hi);
        if !ends.hi_closed && sign_at_ext(&self.poly, hi) == 0 {
            n -= 1;
        }
        if ends.lo_closed && sign_at_ext(&self.poly, lo) == 0 {
            n += 1;
        }
        Ok(n)
    }

    pub fn is_root(&self, q: &Rational) -> bool {
        sign_at(&self.poly, q) == 0
    }

    /// Isolating intervals for every distinct root in the open interval `(lo, hi)`.
    pub fn isolate(&self, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        let two = Rational::from_i64(2);
        // (a, b] pieces, processed right to left so popping yields ascending order
        while let Some((a, b)) = stack.pop() {
            let n = self.count(&ExtReal::Finite(a.clone()), &ExtReal::Finite(b.clone()), Ends { lo_closed: false, hi_closed: true })?;
            let n = if &b == hi && self.is_root(hi) { n - 1 } else { n };
            match n {
                0 => {}
                1 => out.push(self.settle(a, b, hi)),
                _ => {
                    let m = (a.clone() + &b) / &two;
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        Ok(out)
    }

    /// Turns a half-open piece `(a, b]` holding one root into a clean isolating interval.
    fn settle(&self, mut a: Rational, mut b: Rational, outer_hi: &Rational) -> RootInterval {
        if &b != outer_hi && self.is_root(&b) {
            return RootInterval { lo: b.clone(), hi: b };
        }
        // the root is now strictly inside (a, b); move off any other roots at the ends
        let two = Rational::from_i64(2);
        while self.is_root(&a) || self.is_root(&b) {
            let m = (a.clone() + &b) / &two;
            if self.is_root(&m) {
                return RootInterval { lo: m.clone(), hi: m };
            }
            let right = self
                .count(&ExtReal::Finite(m.clone()), &ExtReal::Finite(b.clone()), Ends::OPEN)
                .expect("m < b");
            if right == 1 {
                a = m;
            } else {
                b = m;
            }
        }
        RootInterval { lo: a, hi: b }
    }

    /// Bisect `iv` until its width is below `width` (exact roots are left alone).
    pub fn refine(&self, iv: &RootInterval, width: &Rational) -> RootInterval {
        let mut iv = iv.clone();
        while !iv.is_point() && (iv.hi.clone() - &iv.lo) >= *width {
            iv = self.bisect(&iv);
        }
        iv
    }

    /// One bisection step.
    pub fn bisect(&self, iv: &RootInterval) -> RootInterval {
        bisect_root(&self.poly, iv)
    }
}

/// Closed rational interval holding exactly one root. Either a single
/// exact root (`lo == hi`) or a sign change with the root strictly inside.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "[String; 2]")]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl From<RootInterval> for [String; 2] {
    fn from(r: RootInterval) -> Self {
        [format_rational(&r.lo), format_rational(&r.hi)]
    }
}

impl RootInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.clone() + &self.hi) / Rational::from_i64(2)
    }

    /// Entirely to the left of `o`. Non-point intervals hold their root in
    /// the open interior, so sharing an endpoint still counts as disjoint.
    pub fn strictly_before(&self, o: &RootInterval) -> bool {
        self.hi < o.lo || (self.hi == o.lo && !(self.is_point() && o.is_point()))
    }
}

impl SquareFree {
    /// Sign of `g` at the root held by each interval (0 where `g` shares the root).
    pub fn signs_at_roots(&self, ivs: &[RootInterval], g: &[BigInt]) -> Vec<i32> {
        let g = trim(g.to_vec());
        if g.is_empty() {
            return vec![0; ivs.len()];
        }
        let common = int_gcd(&self.poly, &g);
        let common = (deg(&common) > 0).then(|| SquareFree::new(&common).expect("nonzero gcd"));
        let gsf = SquareFree::new(&g).expect("nonzero");
        ivs.iter()
            .map(|iv| {
                if iv.is_point() {
                    return sign_at(&g, &iv.lo);
                }
                let (lo, hi) = (ExtReal::Finite(iv.lo.clone()), ExtReal::Finite(iv.hi.clone()));
                if let Some(c) = &common {
                    // the root of p inside is the only candidate for a common root
                    if c.count(&lo, &hi, Ends::OPEN).expect("lo < hi") > 0 {
                        return 0;
                    }
                }
                let mut iv = iv.clone();
                loop {
                    if iv.is_point() {
                        return sign_at(&g, &iv.lo);
                    }
                    let (lo, hi) = (ExtReal::Finite(iv.lo.clone()), ExtReal::Finite(iv.hi.clone()));
                    if gsf.count(&lo, &hi, Ends::CLOSED).expect("lo < hi") == 0 {
                        return sign_at(&g, &iv.lo);
                    }
                    iv = self.bisect(&iv);
                }
            })
            .collect()
    }
}

/// One bisection step on an interval where `p` changes sign around a single root.
pub fn bisect_root(p: &[BigInt], iv: &RootInterval) -> RootInterval {
    if iv.is_point() {
        return iv.clone();
    }
    let m = (iv.lo.clone() + &iv.hi) / Rational::from_i64(2);
    let sm = sign_at(p, &m);
    if sm == 0 {
        return RootInterval { lo: m.clone(), hi: m };
    }
    if sm == sign_at(p, &iv.lo) {
        RootInterval { lo: m, hi: iv.hi.clone() }
    } else {
        RootInterval { lo: iv.lo.clone(), hi: m }
    }
}

/// Number of distinct real roots of `p` in the interval; see [`Ends`].
pub fn sturm_count(p: &Polynomial<Rational>, lo: &ExtReal, hi: &ExtReal, ends: Ends) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    SquareFree::from_rational(p)?.count(lo, hi, ends)
}

/// Disjoint isolating intervals for the distinct roots of `p` in `(lo, hi)`.
pub fn isolate_roots(p: &Polynomial<Rational>, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    SquareFree::from_rational(p)?.isolate(lo, hi)
}

/// Yun square-free factorization: `p = c · Π f_i^i`, returned as `(f_i, i)` with nonconstant `f_i`.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let p = from_int_poly(&primitive(p.to_vec()));
    if p.degree() <= 0 {
        return out;
    }
    // monic gcds keep the scalar relations Yun's recurrence depends on
    let p = p.monic().unwrap();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).unwrap().0;
    let c = dp.div_rem(&a0).unwrap().0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((to_int_poly(&a), i));
        }
        b = b.div_rem(&a).unwrap().0;
        let c = d.div_rem(&a).unwrap().0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Roots in the interval counted with multiplicity.
pub fn count_with_multiplicity(p: &[BigInt], lo: &ExtReal, hi: &ExtReal, ends: Ends) -> Result<usize> {
    let mut total = 0;
    for (f, m) in squarefree_decomposition(p) {
        total += m * SquareFree::new(&f)?.count(lo, hi, ends)?;
    }
    Ok(total)
}

/// Cauchy bound: every real root lies strictly inside `(−B, B)`.
pub fn root_bound(p: &[BigInt]) -> Rational {
    let lc = p.last().expect("nonzero polynomial").abs();
    let m = p[..p.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    Rational::new(m, lc) + Rational::from_i64(1)
}

/// Degree of a rational polynomial as usize (0 for constants and zero).
pub fn udeg<S: Scalar>(p: &Polynomial<S>) -> usize {
    p.degree().max(0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }
    fn p(v: &[(i64, i64)]) -> Polynomial<Rational> {
        Polynomial::new(v.iter().map(|&(n, d)| q(n, d)).collect())
    }
    fn fin(n: i64, d: i64) -> ExtReal {
        ExtReal::Finite(q(n, d))
    }

    #[test]
    fn sqrt_two_counted_once() {
        let x2m2 = p(&[(-2, 1), (0, 1), (1, 1)]);
        assert_eq!(sturm_count(&x2m2, &fin(0, 1), &fin(2, 1), Ends::CLOSED).unwrap(), 1);
    }

    #[test]
    fn quadratic_with_rational_coefficients() {
        let qq = p(&[(1, 3), (-2, 1), (1, 1)]);
        assert_eq!(sturm_count(&qq, &fin(0, 1), &fin(2, 1), Ends::OPEN).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let x2p1 = p(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(sturm_count(&x2p1, &fin(-10, 1), &fin(10, 1), Ends::CLOSED).unwrap(), 0);
    }

    #[test]
    fn endpoint_openness() {
        // (x-1)(x-2)
        let f = p(&[(2, 1), (-3, 1), (1, 1)]);
        let a = fin(1, 1);
        let b = fin(2, 1);
        assert_eq!(sturm_count(&f, &a, &b, Ends::OPEN).unwrap(), 0);
        assert_eq!(sturm_count(&f, &a, &b, Ends::CLOSED).unwrap(), 2);
        assert_eq!(sturm_count(&f, &a, &b, Ends { lo_closed: true, hi_closed: false }).unwrap(), 1);
        assert_eq!(sturm_count(&f, &ExtReal::NegInf, &ExtReal::PosInf, Ends::OPEN).unwrap(), 2);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x-1)^3 (x+1)
        let base = &p(&[(-1, 1), (1, 1)]);
        let f = &(&(base * base) * base) * &p(&[(1, 1), (1, 1)]);
        assert_eq!(sturm_count(&f, &fin(-5, 1), &fin(5, 1), Ends::OPEN).unwrap(), 2);
        let sf = SquareFree::from_rational(&f).unwrap();
        assert!(!sf.was_squarefree);
        let m = count_with_multiplicity(&to_int_poly(&f), &fin(0, 1), &fin(5, 1), Ends::OPEN).unwrap();
        assert_eq!(m, 3);
    }

    #[test]
    fn errors() {
        assert_eq!(
            sturm_count(&Polynomial::zero(), &fin(0, 1), &fin(1, 1), Ends::OPEN),
            Err(Error::ZeroPolynomial)
        );
        let f = p(&[(1, 1), (1, 1)]);
        assert_eq!(sturm_count(&f, &fin(1, 1), &fin(1, 1), Ends::OPEN), Err(Error::EmptyInterval));
        assert!(isolate_roots(&f, &q(2, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn isolate_sqrt_two() {
        let f = p(&[(-2, 1), (0, 1), (1, 1)]);
        let ivs = isolate_roots(&f, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(ivs.len(), 1);
        let sf = SquareFree::from_rational(&f).unwrap();
        let r = sf.refine(&ivs[0], &q(1, 1024));
        assert!(r.lo < q(1415, 1000) && r.hi > q(1414, 1000));
        assert!(r.hi.clone() - &r.lo < q(1, 1024));
    }

    #[test]
    fn isolate_rational_roots_are_points_or_brackets() {
        // (x-1/2)(x-3/2): the first bisection midpoint is not a root
        let f = p(&[(3, 4), (-2, 1), (1, 1)]);
        let ivs = isolate_roots(&f, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].strictly_before(&ivs[1]));
        for (iv, r) in ivs.iter().zip([q(1, 2), q(3, 2)]) {
            assert!(iv.lo <= r && r <= iv.hi);
        }
        // a root at a bisection midpoint becomes an exact point interval
        let g = p(&[(-1, 1), (1, 1)]);
        let ivs = isolate_roots(&g, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(ivs.len(), 1);
        let sf = SquareFree::from_rational(&g).unwrap();
        assert_eq!(sf.bisect(&ivs[0]), RootInterval { lo: q(1, 1), hi: q(1, 1) });
        let h = &g * &p(&[(-5, 4), (1, 1)]);
        let ivs = isolate_roots(&h, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(ivs[0], RootInterval { lo: q(1, 1), hi: q(1, 1) });
        // a root at the excluded endpoint is dropped
        assert!(isolate_roots(&g, &q(0, 1), &q(1, 1)).unwrap().is_empty());
    }

    #[test]
    fn adjacent_roots_get_disjoint_intervals() {
        // roots 0, 1/4, 1/2, 3/4, 1 on (0,1): only the three interior ones
        let roots: Vec<Rational> = (0..5).map(|i| q(i, 4)).collect();
        let f = Polynomial::from_roots(&roots);
        let ivs = isolate_roots(&f, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(ivs.len(), 3);
        for w in ivs.windows(2) {
            assert!(w[0].strictly_before(&w[1]) || w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn gcd_and_decomposition() {
        let a = to_int_poly(&p(&[(-1, 1), (0, 1), (1, 1)]));
        let b = to_int_poly(&p(&[(1, 1), (2, 1), (1, 1)]));
        assert_eq!(int_gcd(&a, &b), vec![BigInt::from(1), BigInt::from(1)]);
        let f = vec![BigInt::from(-1), BigInt::from(3), BigInt::from(-3), BigInt::from(1)];
        assert_eq!(squarefree_decomposition(&f), vec![(vec![BigInt::from(-1), BigInt::from(1)], 3)]);
    }

    #[test]
    fn sign_at_infinity() {
        let f = to_int_poly(&p(&[(0, 1), (0, 1), (0, 1), (-2, 1)]));
        assert_eq!(sign_at_ext(&f, &ExtReal::PosInf), -1);
        assert_eq!(sign_at_ext(&f, &ExtReal::NegInf), 1);
    }

    #[test]
    fn signs_at_isolated_roots() {
        // roots ±√2; g = x − 1 is negative at −√2, positive at √2
        let f = to_int_poly(&p(&[(-2, 1), (0, 1), (1, 1)]));
        let sf = SquareFree::new(&f).unwrap();
        let ivs = sf.isolate(&q(-2, 1), &q(2, 1)).unwrap();
        let g = to_int_poly(&p(&[(-1, 1), (1, 1)]));
        assert_eq!(sf.signs_at_roots(&ivs, &g), vec![-1, 1]);
        // shared root gives 0
        let h = to_int_poly(&p(&[(-2, 1), (0, 1), (1, 1)]));
        let hx = to_int_poly(&(&from_int_poly(&h) * &p(&[(3, 1), (1, 1)])));
        assert_eq!(sf.signs_at_roots(&ivs, &hx), vec![0, 0]);
    }
}
