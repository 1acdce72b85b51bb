//! Series-matching assembly of the mixed problem, kept as an independent check
//! on the moment-matrix solver for small indices.

use crate::error::Result;
use crate::exactnum::{nullspace, Matrix, Polynomial, RationalFunction, Scalar};

use super::index::CombinedIndex;
use super::pair::CompatiblePair;

/// F_{j,k}(z) = Σ_i w_i U_j(x_i) V_k(x_i) / (z − x_i), summed as rational functions,
/// with U_j, V_k taken from the reduced rational forms of the tails.
pub fn markov_entry_rational<S: Scalar>(pair: &CompatiblePair<S>, j: usize, k: usize) -> Result<RationalFunction<S>> {
    let u = match (j, pair.tail2()) {
        (0, _) | (_, None) => None,
        (j, Some(t)) => Some(t.transform_rational(1, j)?),
    };
    let v = match (k, pair.tail1()) {
        (0, _) | (_, None) => None,
        (k, Some(t)) => Some(t.transform_rational(1, k)?),
    };
    let mut acc = RationalFunction::zero();
    for (x, w) in pair.root().atoms() {
        let mut c = w.clone();
        if let Some(u) = &u {
            c = c * &u.eval(x)?;
        }
        if let Some(v) = &v {
            c = c * &v.eval(x)?;
        }
        let term = RationalFunction::new(Polynomial::constant(c), Polynomial::x_minus(x))?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Row (j, ν), column (k, r): coefficient of z^{−ν−1} in z^r F_{j,k}(z).
pub fn series_matrix<S: Scalar>(pair: &CompatiblePair<S>, n: &CombinedIndex) -> Result<Matrix<S>> {
    let m1 = pair.m1();
    let m2 = pair.m2();
    let mut f = Vec::with_capacity(m2 + 1);
    for j in 0..=m2 {
        let mut row = Vec::with_capacity(m1 + 1);
        for k in 0..=m1 {
            row.push(markov_entry_rational(pair, j, k)?);
        }
        f.push(row);
    }
    let rows = n.n2.norm();
    let cols = n.n1.norm();
    let mut data = Vec::with_capacity(rows * cols);
    for (j, &n2j) in n.n2.components().iter().enumerate() {
        for nu in 0..n2j {
            for (k, &n1k) in n.n1.components().iter().enumerate() {
                for r in 0..n1k {
                    let shifted = RationalFunction::new(f[j][k].num() * &Polynomial::monomial(S::one(), r), f[j][k].den().clone())?;
                    data.push(shifted.laurent_tail(nu + 1).pop().unwrap_or_else(S::zero));
                }
            }
        }
    }
    Matrix::new(rows, cols, data)
}

pub fn series_kernel<S: Scalar>(pair: &CompatiblePair<S>, n: &CombinedIndex) -> Result<Vec<Vec<S>>> {
    nullspace(&series_matrix(pair, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::hermitepade::{combined_indices, moment_matrix};
    use crate::measures::desk;

    #[test]
    fn series_and_moment_matrices_agree_on_toy_pair() {
        let (a, b) = desk::toy_chains();
        let pair = CompatiblePair::<Rational>::from_chains(a, b).unwrap();
        for n in combined_indices(pair.m1(), pair.m2(), 3) {
            assert_eq!(series_matrix(&pair, &n).unwrap(), moment_matrix(&pair, &n).unwrap(), "{n}");
        }
    }
}
