//! Convergence of type II approximants P_{n,k}/Q_n to ŝ_{0,k} along an index sequence.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational, Scalar};
use crate::hermitepade::{solve_type2_in, CompatiblePair, MultiIndex};
use crate::measures::NikishinSystem;

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub index: MultiIndex,
    pub norm: usize,
    /// log2 of sup_x |P_{n,k}(x)/Q_n(x) − ŝ_{0,k}(x)| for k = 0..=m; `None` for an exact zero.
    pub sup_error_log2: Vec<Option<f64>>,
    /// The same sup-errors in decimal, for tables.
    pub sup_error: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub grid: Vec<String>,
    pub rows: Vec<ConvergenceRow>,
    /// First |n| used for the monotonicity check and the fits.
    pub fit_from: usize,
    /// Least-squares slope of ln(sup-error) against |n|, per component.
    pub slopes: Vec<Option<f64>>,
    /// Slope of the worst component (largest sup-error per row).
    pub slope: Option<f64>,
    /// Every component's sup-error is non-increasing over the rows with |n| ≥ `fit_from`.
    pub non_increasing: bool,
    /// Smallest |n| from which every later row has all errors exactly zero.
    pub exact_from: Option<usize>,
    pub notes: Vec<String>,
}

/// Sequence and grid for [`stieltjes_convergence`].
#[derive(Clone, Debug)]
pub struct ConvergenceSetup {
    pub lambda: Vec<MultiIndex>,
    pub grid: Vec<Rational>,
    /// Constant in the near-diagonal condition n_j ≥ |n|/(m+1) − c.
    pub c: usize,
    pub fit_from: usize,
}

/// `count` equispaced points on [lo, hi].
pub fn segment_grid(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    if count == 1 {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / Rational::from_integer((count as i64 - 1).into());
    (0..count).map(|i| lo + &step * Rational::from_integer((i as i64).into())).collect()
}

/// Does every index satisfy (m+1)·n_j ≥ |n| − (m+1)·c?
pub fn near_diagonal(lambda: &[MultiIndex], c: usize) -> bool {
    lambda.iter().all(|n| {
        let l = n.len();
        n.components().iter().all(|&nj| l * (nj + c) >= n.norm())
    })
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

fn decimal<S: Scalar>(x: &S) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let l2 = x.log2_abs();
    if l2.abs() < 1000.0 {
        return format!("{:.6e}", x.to_f64());
    }
    // outside the f64 range: print the exponent from log2
    let l10 = l2 * std::f64::consts::LOG10_2;
    let e = l10.floor();
    format!("{:.6}e{}", 10f64.powf(l10 - e), e as i64)
}

struct RawRow<S> {
    index: MultiIndex,
    sup: Vec<S>,
    pole: Option<String>,
}

fn row<S: Scalar>(pair: &CompatiblePair<S>, n: &MultiIndex, grid: &[S]) -> Result<RawRow<S>> {
    let sol = solve_type2_in(pair, n)?;
    let sys = pair.s2();
    let mut sup = vec![S::zero(); sol.p.len()];
    let mut pole = None;
    for x in grid {
        let qx = sol.q.eval(x);
        if qx.is_zero() {
            pole = Some(format!("Q_n vanishes at grid point {x} for n = {n}"));
            continue;
        }
        for (k, pk) in sol.p.iter().enumerate() {
            let e = (pk.eval(x) / &qx - sys.nested_transform(0, k, x)?).abs();
            if e > sup[k] {
                sup[k] = e;
            }
        }
    }
    Ok(RawRow { index: n.clone(), sup, pole })
}

/// Sup-errors of P_{n,k}/Q_n against ŝ_{0,k} over the grid for each n in Λ.
///
/// The system must start at σ_0 and the grid must avoid the closed hull of σ_0.
pub fn stieltjes_convergence<S: Scalar>(sys: &NikishinSystem<S>, setup: &ConvergenceSetup) -> Result<ConvergenceTable> {
    if sys.first_label() != 0 {
        return Err(Error::Precondition("convergence needs a system starting at σ_0".into()));
    }
    if setup.lambda.iter().any(|n| n.len() != sys.len()) {
        return Err(Error::InvalidIndex(format!("indices need {} components", sys.len())));
    }
    if !near_diagonal(&setup.lambda, setup.c) {
        return Err(Error::Precondition(format!("sequence leaves the near-diagonal region with c = {}", setup.c)));
    }
    let (lo, hi) = sys.hull_bounds(0)?;
    if setup.grid.iter().any(|x| *x >= lo && *x <= hi) {
        return Err(Error::Precondition("grid meets the hull of σ_0".into()));
    }
    let mut lambda = setup.lambda.clone();
    lambda.sort_by_key(|n| n.norm());

    let prec = sys.measure(0)?.positions()[0].precision().unwrap_or(0);
    let grid: Vec<S> = setup.grid.iter().map(|x| S::from_rational(x, prec)).collect();
    let pair = CompatiblePair::type2(sys)?;
    pair.warm()?;
    let raw = lambda.par_iter().map(|n| row(&pair, n, &grid)).collect::<Result<Vec<_>>>()?;

    let mut notes: Vec<String> = raw.iter().filter_map(|r| r.pole.clone()).collect();
    notes.push("finite budget: errors are observed along a finite stretch of the sequence, not certified limits".into());
    let comps = sys.len();
    let fitted: Vec<&RawRow<S>> = raw.iter().filter(|r| r.index.norm() >= setup.fit_from).collect();
    let non_increasing = fitted.windows(2).all(|w| (0..comps).all(|k| w[1].sup[k] <= w[0].sup[k]));

    let ln2 = std::f64::consts::LN_2;
    let fit = |pick: &dyn Fn(&RawRow<S>) -> S| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = fitted
            .iter()
            .map(|r| (r.index.norm() as f64, pick(r)))
            .filter(|(_, e)| !e.is_zero())
            .map(|(x, e)| (x, e.log2_abs() * ln2))
            .unzip();
        ls_slope(&xs, &ys)
    };
    let slopes = (0..comps).map(|k| fit(&|r: &RawRow<S>| r.sup[k].clone())).collect();
    let worst = |r: &RawRow<S>| {
        r.sup.iter().fold(S::zero(), |a, e| if *e > a { e.clone() } else { a })
    };
    let slope = fit(&worst);

    let all_zero = |r: &RawRow<S>| r.sup.iter().all(|e| e.is_zero());
    let exact_from = raw
        .iter()
        .rposition(|r| !all_zero(r))
        .map_or(raw.first().map(|r| r.index.norm()), |i| raw.get(i + 1).map(|r| r.index.norm()));

    let rows = raw
        .iter()
        .map(|r| ConvergenceRow {
            index: r.index.clone(),
            norm: r.index.norm(),
            sup_error_log2: r.sup.iter().map(|e| (!e.is_zero()).then(|| e.log2_abs())).collect(),
            sup_error: r.sup.iter().map(decimal).collect(),
        })
        .collect();
    Ok(ConvergenceTable {
        grid: setup.grid.iter().map(format_rational).collect(),
        rows,
        fit_from: setup.fit_from,
        slopes,
        slope,
        non_increasing,
        exact_from,
        notes,
    })
}
