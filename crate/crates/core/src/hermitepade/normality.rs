use serde::Serialize;

use crate::exactnum::{Polynomial, Scalar};

use super::solve::{TypeISolution, TypeIISolution, VectorPolynomialSolution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    /// Degree of each polynomial, −1 for the zero polynomial.
    pub degrees: Vec<isize>,
    pub kernel_dim: usize,
}

/// Anything a solver returns.
pub trait Normality {
    fn normality(&self) -> NormalityReport;
}

/// Degree where coefficients negligible against the largest one in `all` are dropped
/// (exact backends keep every nonzero coefficient).
fn effective_degree<S: Scalar>(p: &Polynomial<S>, scale: &S) -> isize {
    let c = p.coeffs();
    for d in (0..c.len()).rev() {
        let keep = if S::EXACT { !c[d].is_zero() } else { !c[d].negligible_against(scale) };
        if keep {
            return d as isize;
        }
    }
    -1
}

fn max_coeff<S: Scalar>(ps: &[&Polynomial<S>]) -> S {
    ps.iter()
        .flat_map(|p| p.coeffs().iter())
        .map(|c| c.abs())
        .fold(S::zero(), |a, b| if b > a { b } else { a })
}

fn vector_report<S: Scalar>(a: &[Polynomial<S>], bounds: &[usize], kernel_dim: usize) -> NormalityReport {
    let refs: Vec<&Polynomial<S>> = a.iter().collect();
    let scale = max_coeff(&refs);
    let degrees: Vec<isize> = a.iter().map(|p| effective_degree(p, &scale)).collect();
    let full = degrees.iter().zip(bounds).all(|(&d, &n)| d == n as isize - 1);
    NormalityReport { normal: kernel_dim == 1 && full, degrees, kernel_dim }
}

impl<S: Scalar> Normality for VectorPolynomialSolution<S> {
    fn normality(&self) -> NormalityReport {
        vector_report(&self.a, self.index.n1.components(), self.kernel_dimension)
    }
}

impl<S: Scalar> Normality for TypeISolution<S> {
    fn normality(&self) -> NormalityReport {
        vector_report(&self.a, self.index.components(), self.kernel_dimension)
    }
}

impl<S: Scalar> Normality for TypeIISolution<S> {
    fn normality(&self) -> NormalityReport {
        let d = effective_degree(&self.q, &max_coeff(&[&self.q]));
        NormalityReport {
            normal: self.kernel_dimension == 1 && d == self.index.norm() as isize,
            degrees: vec![d],
            kernel_dim: self.kernel_dimension,
        }
    }
}

pub fn normality_check<T: Normality>(sol: &T) -> NormalityReport {
    sol.normality()
}
