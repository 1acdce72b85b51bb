//! Word-size prime arithmetic and multi-modular polynomial inversion over ℚ.
//!
//! [`mul_inverse_mod`] computes A·B⁻¹ mod N by solving the problem modulo many
//! primes, lifting with the Chinese remainder theorem and recovering rationals
//! by reconstruction. The candidate is then checked exactly, so the answer
//! never depends on the choice of primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::scalar::Rational;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62, in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

fn poly_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.iter().map(|c| int_mod(c, p)).collect();
    trim(&mut v);
    v
}

/// f = scale · g with g a primitive integer polynomial; `None` for f = 0.
fn primitive(f: &Polynomial<Rational>) -> Option<(Rational, Vec<BigInt>)> {
    if f.is_zero() {
        return None;
    }
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    Some((Rational::new(g.clone(), den), ints.into_iter().map(|c| c / &g).collect()))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn sub_scaled(a: &mut Vec<u64>, b: &[u64], c: u64, shift: usize, p: u64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, bj) in b.iter().enumerate() {
        a[j + shift] = (a[j + shift] + p - mulmod(c, *bj, p)) % p;
    }
    trim(a);
}

/// (quotient, remainder) modulo p; `b` must be nonzero.
fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let inv = powmod(*b.last().unwrap(), p - 2, p);
    let mut q = vec![0; r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), inv, p);
        q[shift] = c;
        sub_scaled(&mut r, b, c, shift, p);
    }
    trim(&mut q);
    (q, r)
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(*x, *y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// B⁻¹ mod N over 𝔽_p, or `None` when gcd(B, N) ≠ 1 there.
fn inverse(b: &[u64], n: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (n.to_vec(), divrem(b, n, p).1);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let mut t2 = t0.clone();
        let qt = mul(&q, &t1, p);
        sub_scaled(&mut t2, &qt, 1, 0, p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = powmod(r0[0], p - 2, p);
    Some(t0.iter().map(|x| mulmod(*x, c, p)).collect())
}

/// a/b with |a|, b ≤ sqrt(m/2) and a ≡ r·b (mod m), if one exists.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let q = Rational::new(r1, t1);
    (q.denom().gcd(m).is_one()).then_some(q)
}

/// A·B⁻¹ mod N over ℚ, or `None` when B is not invertible modulo N.
///
/// `N` must be nonzero of positive degree.
pub fn mul_inverse_mod(
    a: &Polynomial<Rational>,
    b: &Polynomial<Rational>,
    n: &Polynomial<Rational>,
) -> Option<Polynomial<Rational>> {
    let d = n.degree() as usize;
    let an = a.div_rem(n).ok()?.1;
    let bn = b.div_rem(n).ok()?.1;
    // work with primitive integer polynomials; the scales come back at the end
    let Some((sa, ai)) = primitive(&an) else {
        return exact_fallback(&an, &bn, n);
    };
    let (sb, bi) = primitive(&bn)?;
    let (_, ni) = primitive(n)?;
    let scale = sa / sb;
    let mut m = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); d];
    let (mut used, mut misses) = (0usize, 0usize);
    let mut next_try = 4;
    for p in primes() {
        let (am, bm, nm) = (poly_mod(&ai, p), poly_mod(&bi, p), poly_mod(&ni, p));
        if nm.len() != d + 1 {
            continue;
        }
        let Some(binv) = inverse(&bm, &nm, p) else {
            // a bad prime, or no inverse at all: let exact arithmetic decide
            misses += 1;
            if misses > 3 {
                return exact_fallback(&an, &bn, n);
            }
            continue;
        };
        let u = divrem(&mul(&am, &binv, p), &nm, p).1;
        // CRT: acc ← acc + m·((u − acc)·m⁻¹ mod p)
        let pb = BigInt::from(p);
        let minv = powmod(int_mod(&m, p), p - 2, p);
        for (i, c) in acc.iter_mut().enumerate() {
            let ui = u.get(i).copied().unwrap_or(0);
            let diff = (ui + p - int_mod(c, p)) % p;
            *c += &m * BigInt::from(mulmod(diff, minv, p));
        }
        m *= &pb;
        used += 1;
        if used == next_try {
            next_try *= 2;
            let cand = acc.iter().map(|c| reconstruct(c, &m)).collect::<Option<Vec<_>>>();
            if let Some(cand) = cand {
                let cand = &Polynomial::new(cand) * &Polynomial::constant(scale.clone());
                let check = (&(&cand * &bn) - &an).div_rem(n).ok()?.1;
                if check.is_zero() {
                    return Some(cand);
                }
            }
            if used >= 1 << 14 {
                return exact_fallback(&an, &bn, n);
            }
        }
    }
    unreachable!("the prime iterator is unbounded")
}

fn exact_fallback(a: &Polynomial<Rational>, b: &Polynomial<Rational>, n: &Polynomial<Rational>) -> Option<Polynomial<Rational>> {
    let (g, inv, _) = b.ext_gcd(n);
    if g.degree() != 0 {
        return None;
    }
    Some((a * &inv).div_rem(n).ok()?.1)
}
