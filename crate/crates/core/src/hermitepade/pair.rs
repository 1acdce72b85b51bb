use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exactnum::{ComplexPair, Matrix, Scalar};
use crate::measures::{validate_chain, AtomicMeasure, GeneratorChain, NikishinSystem};

/// Two Nikishin systems sharing the root measure σ_0.
///
/// Rows are indexed by the second system (U = (1, ŝ²_{1,1}, …)), columns by
/// the first (V = (1, ŝ¹_{1,1}, …)).
pub struct CompatiblePair<S> {
    s1: NikishinSystem<S>,
    s2: NikishinSystem<S>,
    /// `weights[j][k][i]` = w_{0,i} U_j(x_i) V_k(x_i).
    weights: Vec<Vec<OnceLock<Vec<S>>>>,
    moments: Vec<Vec<Mutex<MomentCache<S>>>>,
    /// Every entry of W is integrable against σ_0; always true for finite sums.
    pub integrable: bool,
}

struct MomentCache<S> {
    /// mixed weight times x_i^len
    pows: Vec<S>,
    vals: Vec<S>,
}

/// Single-measure system on the root of `sys`.
pub fn root_system<S: Scalar>(sys: &NikishinSystem<S>) -> Result<NikishinSystem<S>> {
    validate_chain(GeneratorChain::new(vec![sys.measure(sys.first_label())?.clone()], 0))
}

impl<S: Scalar> CompatiblePair<S> {
    pub fn new(s1: NikishinSystem<S>, s2: NikishinSystem<S>) -> Result<Self> {
        if s1.first_label() != 0 || s2.first_label() != 0 {
            return Err(Error::Incompatible("both systems must start at σ_0".into()));
        }
        if s1.measure(0)? != s2.measure(0)? {
            return Err(Error::Incompatible("root measures differ".into()));
        }
        let (m1, m2) = (s1.len() - 1, s2.len() - 1);
        let weights = (0..=m2).map(|_| (0..=m1).map(|_| OnceLock::new()).collect()).collect();
        let moments = (0..=m2)
            .map(|_| (0..=m1).map(|_| Mutex::new(MomentCache { pows: vec![], vals: vec![] })).collect())
            .collect();
        Ok(CompatiblePair { s1, s2, weights, moments, integrable: true })
    }

    /// Validates both chains and pairs them.
    pub fn from_chains(c1: GeneratorChain<S>, c2: GeneratorChain<S>) -> Result<Self> {
        Self::new(validate_chain(c1)?, validate_chain(c2)?)
    }

    /// Type II setting: the first system is σ_0 alone.
    pub fn type2(sys: &NikishinSystem<S>) -> Result<Self> {
        Self::new(root_system(sys)?, sys.clone())
    }

    /// Type I setting: the second system is σ_0 alone.
    pub fn type1(sys: &NikishinSystem<S>) -> Result<Self> {
        Self::new(sys.clone(), root_system(sys)?)
    }

    pub fn m1(&self) -> usize {
        self.s1.len() - 1
    }

    pub fn m2(&self) -> usize {
        self.s2.len() - 1
    }

    pub fn s1(&self) -> &NikishinSystem<S> {
        &self.s1
    }

    pub fn s2(&self) -> &NikishinSystem<S> {
        &self.s2
    }

    pub fn root(&self) -> &AtomicMeasure<S> {
        self.s1.measure(0).expect("nonempty system")
    }

    /// The first system from σ_1 on, labelled from 1 (`None` when m₁ = 0).
    pub fn tail1(&self) -> Option<NikishinSystem<S>> {
        (self.m1() > 0).then(|| self.s1.tail(1, 1).expect("m1 > 0"))
    }

    pub fn tail2(&self) -> Option<NikishinSystem<S>> {
        (self.m2() > 0).then(|| self.s2.tail(1, 1).expect("m2 > 0"))
    }

    /// U_j(x) = ŝ²_{1,j}(x), with U_0 ≡ 1.
    pub fn u_value(&self, j: usize, x: &S) -> Result<S> {
        if j == 0 {
            Ok(S::one())
        } else {
            self.s2.nested_transform(1, j, x)
        }
    }

    /// V_k(x) = ŝ¹_{1,k}(x), with V_0 ≡ 1.
    pub fn v_value(&self, k: usize, x: &S) -> Result<S> {
        if k == 0 {
            Ok(S::one())
        } else {
            self.s1.nested_transform(1, k, x)
        }
    }

    fn check(&self, j: usize, k: usize) -> Result<()> {
        if j > self.m2() || k > self.m1() {
            return Err(Error::IndexOutOfRange(format!("entry ({j},{k}) of a {}x{} matrix", self.m2() + 1, self.m1() + 1)));
        }
        Ok(())
    }

    /// Atom weights of W_{j,k} dσ_0.
    pub fn mixed_weights(&self, j: usize, k: usize) -> Result<&[S]> {
        self.check(j, k)?;
        if let Some(w) = self.weights[j][k].get() {
            return Ok(w);
        }
        let root = self.root();
        let mut w = Vec::with_capacity(root.len());
        for (x, w0) in root.atoms() {
            w.push(w0.clone() * &self.u_value(j, x)? * &self.v_value(k, x)?);
        }
        Ok(self.weights[j][k].get_or_init(|| w))
    }

    /// c_{j,k,ν} = ∫ x^ν W_{j,k} dσ_0.
    pub fn mixed_moment(&self, j: usize, k: usize, nu: usize) -> Result<S> {
        let w = self.mixed_weights(j, k)?;
        let xs = self.root().positions();
        let mut cache = self.moments[j][k].lock().expect("moment cache poisoned");
        if cache.vals.is_empty() {
            cache.pows = w.to_vec();
        }
        while cache.vals.len() <= nu {
            let s = cache.pows.iter().fold(S::zero(), |a, b| a + b);
            cache.vals.push(s);
            let next: Vec<S> = cache.pows.iter().zip(xs).map(|(p, x)| p.clone() * x).collect();
            cache.pows = next;
        }
        Ok(cache.vals[nu].clone())
    }

    /// Ŝ(z): entry (j,k) is Σ_i w_{0,i} U_j(x_i) V_k(x_i) / (z − x_i).
    pub fn markov_matrix_eval(&self, z: &S) -> Result<Matrix<S>> {
        let mut out = Matrix::zeros(self.m2() + 1, self.m1() + 1);
        let xs = self.root().positions();
        for j in 0..=self.m2() {
            for k in 0..=self.m1() {
                let mut acc = S::zero();
                for (x, w) in xs.iter().zip(self.mixed_weights(j, k)?) {
                    let d = z.clone() - x;
                    if d.is_zero() {
                        return Err(Error::PoleEvaluation);
                    }
                    acc = acc + w.clone() / &d;
                }
                out.set(j, k, acc);
            }
        }
        Ok(out)
    }

    /// Ŝ at a complex point, as rows of (re, im) pairs.
    pub fn markov_matrix_eval_complex(&self, z: &ComplexPair<S>) -> Result<Vec<Vec<ComplexPair<S>>>> {
        let xs = self.root().positions();
        let mut rows = Vec::new();
        for j in 0..=self.m2() {
            let mut row = Vec::new();
            for k in 0..=self.m1() {
                let mut acc = ComplexPair::zero();
                for (x, w) in xs.iter().zip(self.mixed_weights(j, k)?) {
                    acc = acc + z.sub_real(x).recip().ok_or(Error::PoleEvaluation)?.scale(w);
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Fills the system tables and mixed weights before parallel use.
    pub fn warm(&self) -> Result<()> {
        self.s1.warm();
        self.s2.warm();
        for j in 0..=self.m2() {
            for k in 0..=self.m1() {
                self.mixed_weights(j, k)?;
            }
        }
        Ok(())
    }
}
