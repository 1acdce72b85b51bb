use crate::error::{Error, Result};
use crate::exactnum::{Polynomial, Scalar};

use super::index::{CombinedIndex, MultiIndex};
use super::pair::CompatiblePair;
use super::solve::{solve_mixed, VectorPolynomialSolution};

/// Forms 𝒬_{n₁} (first system) and 𝒫_{n₂} (second system) with their Gram table
/// g[a][b] = ∫ 𝒬_{Λ1[a]} 𝒫_{Λ2[b]} dσ_0.
#[derive(Clone, Debug)]
pub struct Biorthogonal<S> {
    pub q_forms: Vec<VectorPolynomialSolution<S>>,
    pub p_forms: Vec<VectorPolynomialSolution<S>>,
    pub gram: Vec<Vec<S>>,
}

impl<S: Scalar> Biorthogonal<S> {
    /// Every entry with |n₁| ≠ |n₂| vanishes (exactly, or negligibly against the table in big-float).
    pub fn off_band_zero(&self) -> bool {
        let scale = self.scale();
        self.entries().filter(|(a, b, _)| a != b).all(|(_, _, g)| zeroish(g, &scale))
    }

    pub fn band_nonzero(&self) -> bool {
        let scale = self.scale();
        self.entries().filter(|(a, b, _)| a == b).all(|(_, _, g)| !zeroish(g, &scale))
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.gram.iter().enumerate().flat_map(|(a, row)| row.iter().enumerate().map(move |(b, g)| (a, b, g)))
    }

    fn scale(&self) -> S {
        self.entries().map(|(_, _, g)| g.abs()).fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}

fn zeroish<S: Scalar>(g: &S, scale: &S) -> bool {
    if S::EXACT {
        g.is_zero()
    } else {
        g.negligible_against(scale)
    }
}

/// Norms 1, 2, 3, … in order, each member componentwise above the previous one.
pub fn check_complete(seq: &[MultiIndex], len: usize) -> Result<()> {
    for (t, n) in seq.iter().enumerate() {
        if n.len() != len {
            return Err(Error::IncompleteSequence(format!("{n} should have {len} components")));
        }
        if n.norm() != t + 1 {
            return Err(Error::IncompleteSequence(format!("member {t} is {n}, norm should be {}", t + 1)));
        }
        if t > 0 && !seq[t - 1].le(n) {
            return Err(Error::IncompleteSequence(format!("{} and {n} are not ordered", seq[t - 1])));
        }
    }
    Ok(())
}

/// Member of norm `t` (the zero index for t = 0).
fn partner(seq: &[MultiIndex], len: usize, t: usize) -> MultiIndex {
    if t == 0 {
        MultiIndex::new(vec![0; len]).expect("len > 0")
    } else {
        seq[t - 1].clone()
    }
}

fn form_at<S: Scalar>(a: &[Polynomial<S>], x: &S, basis: impl Fn(usize, &S) -> Result<S>) -> Result<S> {
    let mut acc = a[0].eval(x);
    for (k, p) in a.iter().enumerate().skip(1) {
        if !p.is_zero() {
            acc = acc + p.eval(x) * &basis(k, x)?;
        }
    }
    Ok(acc)
}

/// 𝒬_{n₁} = 𝒜_{(n₁; n₂')} and 𝒫_{n₂} = 𝒜_{(n₂; n₁')} for the swapped pair, where the
/// primed partner is the member of the other sequence with norm one less.
pub fn biorthogonal_sequences<S: Scalar>(
    pair: &CompatiblePair<S>,
    lambda1: &[MultiIndex],
    lambda2: &[MultiIndex],
) -> Result<Biorthogonal<S>> {
    let (l1, l2) = (pair.m1() + 1, pair.m2() + 1);
    check_complete(lambda1, l1)?;
    check_complete(lambda2, l2)?;
    let swapped = CompatiblePair::new(pair.s2().clone(), pair.s1().clone())?;
    let mut q_forms = Vec::new();
    for n1 in lambda1 {
        if n1.norm() - 1 > lambda2.len() {
            return Err(Error::IncompleteSequence(format!("no partner of norm {} for {n1}", n1.norm() - 1)));
        }
        let n = CombinedIndex::new(n1.clone(), partner(lambda2, l2, n1.norm() - 1))?;
        q_forms.push(solve_mixed(pair, &n)?);
    }
    let mut p_forms = Vec::new();
    for n2 in lambda2 {
        if n2.norm() - 1 > lambda1.len() {
            return Err(Error::IncompleteSequence(format!("no partner of norm {} for {n2}", n2.norm() - 1)));
        }
        let n = CombinedIndex::new(n2.clone(), partner(lambda1, l1, n2.norm() - 1))?;
        p_forms.push(solve_mixed(&swapped, &n)?);
    }
    let root = pair.root();
    let mut qv = Vec::new();
    for q in &q_forms {
        qv.push(root.positions().iter().map(|x| form_at(&q.a, x, |k, x| pair.v_value(k, x))).collect::<Result<Vec<_>>>()?);
    }
    let mut pv = Vec::new();
    for p in &p_forms {
        pv.push(root.positions().iter().map(|x| form_at(&p.a, x, |j, x| pair.u_value(j, x))).collect::<Result<Vec<_>>>()?);
    }
    let gram = qv
        .iter()
        .map(|q| {
            pv.iter()
                .map(|p| {
                    q.iter().zip(p).zip(root.weights()).fold(S::zero(), |acc, ((a, b), w)| acc + w.clone() * a * b)
                })
                .collect()
        })
        .collect();
    Ok(Biorthogonal { q_forms, p_forms, gram })
}
