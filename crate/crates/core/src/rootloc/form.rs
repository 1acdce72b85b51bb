use crate::error::{Error, Result};
use crate::exactnum::sturm::{sign_at, to_int_poly};
use crate::exactnum::{Polynomial, Rational, RationalFunction, Scalar};
use crate::hermitepade::{CompatiblePair, VectorPolynomialSolution};
use crate::measures::{validate_chain, NikishinSystem};

/// ℒ = p_0 + Σ_{k≥1} p_k ŝ_{f,f+k−1}, f the first label of `system`.
#[derive(Clone, Debug)]
pub struct LinearForm<S: Scalar> {
    pub coeffs: Vec<Polynomial<S>>,
    /// `None` when the form is a plain polynomial.
    pub system: Option<NikishinSystem<S>>,
    /// (p_0 D + Σ p_k N_k) / D, D the atom polynomial of the first generator.
    pub as_rational: RationalFunction<S>,
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(coeffs: Vec<Polynomial<S>>, system: Option<NikishinSystem<S>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a linear form needs p_0".into()));
        }
        let as_rational = match &system {
            Some(sys) => sys.linear_form(&coeffs)?,
            None if coeffs.len() == 1 => RationalFunction::from_poly(coeffs[0].clone()),
            None => return Err(Error::Precondition(format!("{} coefficients but no system", coeffs.len()))),
        };
        Ok(LinearForm { coeffs, system, as_rational })
    }

    /// 𝒜_n of a mixed solution, over the first system's tail.
    pub fn from_solution(pair: &CompatiblePair<S>, sol: &VectorPolynomialSolution<S>) -> Result<Self> {
        Self::new(sol.a.clone(), pair.tail1())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    pub fn eval(&self, x: &S) -> Result<S> {
        match &self.system {
            Some(sys) => sys.linear_form_eval(&self.coeffs, x),
            None => Ok(self.coeffs[0].eval(x)),
        }
    }

    /// Δ_1 = hull of the first generator's atoms (`None` for a plain polynomial).
    pub fn delta1(&self) -> Option<(Rational, Rational)> {
        self.system.as_ref().map(|s| s.measures()[0].hull_bounds())
    }

    /// The same form with every coefficient and atom read as an exact rational.
    pub fn exact(&self) -> Result<LinearForm<Rational>> {
        let coeffs: Vec<Polynomial<Rational>> = self.coeffs.iter().map(|p| p.to_rational()).collect();
        let system = match &self.system {
            None => None,
            Some(s) => Some(validate_chain(s.chain().to_rational())?),
        };
        if S::EXACT {
            let as_rational = self.as_rational.to_rational();
            return Ok(LinearForm { coeffs, system, as_rational });
        }
        LinearForm::new(coeffs, system)
    }
}

impl LinearForm<Rational> {
    /// Numerator after cancelling common factors with the denominator.
    pub fn reduced_numerator(&self) -> Result<Polynomial<Rational>> {
        let num = self.as_rational.num();
        if num.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let Some(sys) = &self.system else { return Ok(num.clone()) };
        // the denominator's roots are exactly the first generator's atoms
        let ip = to_int_poly(num);
        if sys.measures()[0].positions().iter().all(|x| sign_at(&ip, x) != 0) {
            return Ok(num.clone());
        }
        Ok(self.as_rational.reduce().num().clone())
    }
}
