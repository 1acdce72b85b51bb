use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect()
    }

    /// Rows permuted by `perm` (row `i` of the result is row `perm[i]`).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let data = perm.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { rows: perm.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Exact backend: any nonzero entry is a pivot. Big-float backend: the
    /// largest candidate is taken, and it counts as zero when it is below
    /// 2^(−p/2) times the largest entry of its row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                let v = m.get(i, c);
                if v.is_zero() {
                    continue;
                }
                if S::EXACT {
                    best = Some(i);
                    break;
                }
                let row_max = m.row(i).iter().map(|x| x.abs()).fold(S::zero(), |a, b| if b > a { b } else { a });
                if v.negligible_against(&row_max) {
                    continue;
                }
                if best.map_or(true, |b| v.abs() > m.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = S::one() / m.get(r, c);
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            m.set(r, c, S::one());
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j);
                    m.set(i, j, v);
                }
                m.set(i, c, S::zero());
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// Basis of ker(M), each vector scaled so its first nonzero entry is 1.
///
/// A matrix with no rows has the whole space as kernel; a matrix with no
/// columns is rejected.
pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Result<Vec<Vec<S>>> {
    if m.cols == 0 {
        return Err(Error::DegenerateSystem("matrix has no columns".into()));
    }
    let (r, pivots) = m.rref();
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(); m.cols];
        v[f] = S::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, f).clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free column is nonzero");
        let inv = S::one() / &lead;
        basis.push(v.into_iter().map(|x| x * &inv).collect());
    }
    Ok(basis)
}
