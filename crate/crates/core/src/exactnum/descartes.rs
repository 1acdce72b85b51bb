//! Real-root isolation by Descartes' rule of signs with interval bisection.
//!
//! Needs a square-free input; [`squarefree_mod_p`] certifies that cheaply.
//! Works only with Taylor shifts and power-of-two scalings, so coefficients
//! grow linearly in the bisection depth instead of along a remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{mulmod, powmod};
use super::scalar::Rational;
use super::sturm::{sign_at, RootInterval};

/// Primes just below 2^62.
const PRIMES: [u64; 3] = [4_611_686_018_427_387_847, 4_611_686_018_427_387_817, 4_611_686_018_427_387_787];

fn reduce(p: &[BigInt], m: u64) -> Vec<u64> {
    let bm = BigInt::from(m);
    let mut v: Vec<u64> = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(&bm);
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    while !b.is_empty() {
        // a mod b
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = mulmod(f, *bj, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True only if `p` is certainly square-free (gcd(p, p′) = 1 modulo a prime
/// not dividing the leading coefficient). False means "unknown".
pub fn squarefree_mod_p(p: &[BigInt]) -> bool {
    if p.len() <= 2 {
        return !p.is_empty();
    }
    let d: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    PRIMES.iter().any(|&m| {
        let (a, b) = (reduce(p, m), reduce(&d, m));
        a.len() == p.len() && b.len() == d.len() && gcd_degree_mod(a, b, m) == 0
    })
}

/// True only if `a` and `b` certainly have no common root.
pub fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.len() <= 1 || b.len() <= 1 {
        return true;
    }
    PRIMES.iter().any(|&m| {
        let (ra, rb) = (reduce(a, m), reduce(b, m));
        ra.len() == a.len() && rb.len() == b.len() && gcd_degree_mod(ra, rb, m) == 0
    })
}

/// p(x + 1), in place.
fn taylor_shift_one(p: &mut [BigInt]) {
    let n = p.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = p[j + 1].clone();
            p[j] += t;
        }
    }
}

/// Sign variations of the coefficients of (t+1)^n p(1/(t+1)): an upper bound
/// on the roots of p in (0, 1), exact when it is 0 or 1.
fn variations_01(p: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = p.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    let mut last = 0;
    let mut v = 0;
    for c in &r {
        let s = if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// 2^n p(t/2).
fn halve(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    p.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

/// Isolating intervals, ascending, for the roots of a square-free integer
/// polynomial in the open interval (lo, hi).
pub fn isolate_squarefree(p: &[BigInt], lo: &Rational, hi: &Rational) -> Vec<RootInterval> {
    if p.len() <= 1 || lo >= hi {
        return Vec::new();
    }
    // g(t) = C^n p((A + B t)/C) with lo = A/C, hi − lo = B/C
    let c = lo.denom().lcm(hi.denom());
    let a = lo.numer() * (&c / lo.denom());
    let b = hi.numer() * (&c / hi.denom()) - &a;
    let n = p.len() - 1;
    let mut h: Vec<BigInt> = Vec::with_capacity(p.len());
    let mut cp = BigInt::one();
    let mut pows = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        cp *= &c;
        pows[i] = cp.clone();
    }
    for (i, coef) in p.iter().enumerate() {
        h.push(coef * &pows[n - i]);
    }
    // g(x) = h(x + A) by Horner: g ← g·(x + A) + coef
    let mut g = vec![BigInt::zero(); n + 1];
    for coef in h.iter().rev() {
        for j in (1..=n).rev() {
            let t = &g[j - 1] + &g[j] * &a;
            g[j] = t;
        }
        g[0] = &g[0] * &a + coef;
    }
    let mut bp = BigInt::one();
    for coef in g.iter_mut() {
        *coef *= &bp;
        bp *= &b;
    }
    let width = Rational::new(b, c);
    let to_x = |k: u32, num: &BigInt| lo.clone() + width.clone() * Rational::new(num.clone(), BigInt::one() << k);

    enum Node {
        Piece(Vec<BigInt>, u32, BigInt),
        Root(Rational),
    }
    let mut out = Vec::new();
    // depth-first, left before right; a piece is t ∈ (num/2^k, (num+1)/2^k)
    let mut stack = vec![Node::Piece(g, 0, BigInt::zero())];
    while let Some(node) = stack.pop() {
        let (q, k, num) = match node {
            Node::Root(x) => {
                out.push(RootInterval { lo: x.clone(), hi: x });
                continue;
            }
            Node::Piece(q, k, num) => (q, k, num),
        };
        let v = variations_01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            let (l, r) = (to_x(k, &num), to_x(k, &(&num + 1u32)));
            // an end can be a root (an outer bound, or a midpoint root next door)
            if sign_at(p, &l) != 0 && sign_at(p, &r) != 0 {
                out.push(RootInterval { lo: l, hi: r });
                continue;
            }
        }
        let left = halve(&q);
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        let mid = &num * 2u32 + 1u32;
        let mid_root = right[0].is_zero();
        stack.push(Node::Piece(right, k + 1, mid.clone()));
        if mid_root {
            stack.push(Node::Root(to_x(k + 1, &mid)));
        }
        stack.push(Node::Piece(left, k + 1, &num * 2u32));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::sturm::{to_int_poly, SquareFree};
    use crate::exactnum::Polynomial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn modular_squarefree() {
        let p = to_int_poly(&Polynomial::from_roots(&[q(1, 3), q(2, 1), q(-5, 7)]));
        assert!(squarefree_mod_p(&p));
        let d = to_int_poly(&Polynomial::from_roots(&[q(1, 3), q(1, 3), q(2, 1)]));
        assert!(!squarefree_mod_p(&d));
        let a = to_int_poly(&Polynomial::from_roots(&[q(1, 3), q(2, 1)]));
        let b = to_int_poly(&Polynomial::from_roots(&[q(1, 2), q(2, 1)]));
        assert!(!coprime_mod_p(&a, &b));
        assert!(coprime_mod_p(&a, &to_int_poly(&Polynomial::from_roots(&[q(1, 2)]))));
    }

    #[test]
    fn agrees_with_sturm() {
        let roots = [q(1, 3), q(1, 2), q(2, 3), q(7, 10), q(-1, 1), q(3, 1)];
        let p = to_int_poly(&Polynomial::from_roots(&roots));
        let ivs = isolate_squarefree(&p, &q(0, 1), &q(1, 1));
        assert_eq!(ivs.len(), 4);
        // 1/2 is an exact midpoint root
        assert!(ivs.iter().any(|iv| iv.is_point() && iv.lo == q(1, 2)));
        for w in ivs.windows(2) {
            assert!(w[0].strictly_before(&w[1]));
        }
        let sf = SquareFree::new(&p).unwrap();
        assert_eq!(sf.isolate(&q(-2, 1), &q(4, 1)).unwrap().len(), isolate_squarefree(&p, &q(-2, 1), &q(4, 1)).len());
        // roots at the outer ends are excluded
        assert_eq!(isolate_squarefree(&p, &q(1, 3), &q(3, 1)).len(), 3);
        // neighbouring roots on both sides of a midpoint root
        let m = to_int_poly(&Polynomial::from_roots(&[q(1, 2), q(3, 5), q(2, 5)]));
        for iv in isolate_squarefree(&m, &q(0, 1), &q(1, 1)) {
            assert!(iv.is_point() || sign_at(&m, &iv.lo) * sign_at(&m, &iv.hi) < 0, "{iv:?}");
        }
        // irrational roots: x² − 2
        let s = vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)];
        let r = isolate_squarefree(&s, &q(-2, 1), &q(2, 1));
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|iv| sign_at(&s, &iv.lo) * sign_at(&s, &iv.hi) < 0));
    }
}
