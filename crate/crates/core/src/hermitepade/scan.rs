use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::measures::ExtendedInterval;
use crate::rootloc::{interlacing_check, zeros_in_hull, LinearForm, ZeroReport};

use super::index::{combined_indices, diagonal, CombinedIndex};
use super::normality::{normality_check, NormalityReport};
use super::pair::CompatiblePair;
use super::solve::{orthogonality_residuals, orthogonality_scale, solve_mixed, VectorPolynomialSolution};

#[derive(Clone, Debug, Serialize)]
pub struct ResidualStatus {
    pub exact_zero: bool,
    /// log2 of the largest residual relative to the size of its summands; `None` when all vanish.
    pub max_log2_relative: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub index: CombinedIndex,
    pub normality: NormalityReport,
    pub zeros: Option<ZeroReport>,
    /// Exactly |n₂| simple zeros in the open hull of σ_0 and none elsewhere off Co(supp σ¹_1).
    pub zero_location: bool,
    pub residuals: ResidualStatus,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlacingEntry {
    pub from: CombinedIndex,
    pub to: CombinedIndex,
    pub holds: bool,
    pub common_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub indices: usize,
    pub all_normal: bool,
    pub zero_location: bool,
    pub orthogonality: bool,
    pub interlacing: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub m1: usize,
    pub m2: usize,
    pub budget: usize,
    /// Big-float working precision, `None` for exact arithmetic.
    pub precision: Option<usize>,
    pub indices: Vec<IndexReport>,
    pub interlacing: Vec<InterlacingEntry>,
    pub summary: ScanSummary,
}

fn root_hull<S: Scalar>(pair: &CompatiblePair<S>) -> Option<ExtendedInterval> {
    let (a, b) = pair.root().hull_bounds();
    ExtendedInterval::finite(a, b).ok()
}

pub fn residual_status<S: Scalar>(pair: &CompatiblePair<S>, sol: &VectorPolynomialSolution<S>) -> Result<ResidualStatus> {
    let res = orthogonality_residuals(pair, sol)?;
    let exact_zero = res.iter().all(|r| r.is_zero());
    if exact_zero {
        return Ok(ResidualStatus { exact_zero, max_log2_relative: None, ok: true });
    }
    let scale = orthogonality_scale(pair, sol)?;
    let worst = res.iter().map(|r| r.log2_abs()).fold(f64::NEG_INFINITY, f64::max) - scale.log2_abs();
    let ok = match pair.root().positions()[0].precision() {
        Some(p) => worst < 16.0 - p as f64,
        None => false,
    };
    Ok(ResidualStatus { exact_zero, max_log2_relative: Some(worst), ok })
}

fn examine<S: Scalar>(
    pair: &CompatiblePair<S>,
    n: &CombinedIndex,
    hull: Option<&ExtendedInterval>,
) -> Result<(IndexReport, VectorPolynomialSolution<S>)> {
    let sol = solve_mixed(pair, n)?;
    let normality = normality_check(&sol);
    let residuals = residual_status(pair, &sol)?;
    let form = LinearForm::from_solution(pair, &sol)?;
    let want = n.n2.norm();
    let zeros = match hull {
        Some(h) => Some(zeros_in_hull(&form, h)?),
        None => None,
    };
    let zero_location = match &zeros {
        Some(z) => z.count_in_hull == want && z.all_simple && !z.endpoint_zero && z.count_outside_delta1 == want,
        // a single root atom: no room for zeros
        None => want == 0,
    };
    Ok((IndexReport { index: n.clone(), normality, zeros, zero_location, residuals, error: None }, sol))
}

fn failed(n: &CombinedIndex, e: &Error) -> IndexReport {
    IndexReport {
        index: n.clone(),
        normality: NormalityReport { normal: false, degrees: vec![], kernel_dim: 0 },
        zeros: None,
        zero_location: false,
        residuals: ResidualStatus { exact_zero: false, max_log2_relative: None, ok: false },
        error: Some(e.to_string()),
    }
}

/// Solves every (n₁; n₂) with |n₁| ≤ budget, locates zeros and checks interlacing along the diagonal.
pub fn perfectness_scan<S: Scalar>(pair: &CompatiblePair<S>, budget: usize) -> Result<ScanReport> {
    let atoms = pair.root().len();
    if budget == 0 || budget - 1 > atoms {
        return Err(Error::AtomBudget(format!("budget {budget} needs |n2| up to {} but σ_0 has {atoms} atoms", budget.max(1) - 1)));
    }
    pair.warm()?;
    let hull = root_hull(pair);
    let all = combined_indices(pair.m1(), pair.m2(), budget);
    let results: Vec<(IndexReport, Option<VectorPolynomialSolution<S>>)> = all
        .par_iter()
        .map(|n| match examine(pair, n, hull.as_ref()) {
            Ok((r, s)) => (r, Some(s)),
            Err(e) => (failed(n, &e), None),
        })
        .collect();

    let diag = diagonal(pair.m1(), pair.m2(), budget);
    let lookup = |n: &CombinedIndex| all.iter().position(|m| m == n).and_then(|i| results[i].1.as_ref());
    let interlacing: Vec<InterlacingEntry> = diag
        .windows(2)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|w| {
            let outcome = (|| -> Result<(bool, bool)> {
                let (Some(a), Some(b), Some(h)) = (lookup(&w[0]), lookup(&w[1]), hull.as_ref()) else {
                    return Ok((false, false));
                };
                let fa = LinearForm::from_solution(pair, a)?;
                let fb = LinearForm::from_solution(pair, b)?;
                let r = interlacing_check(&fa, &fb, h)?;
                Ok((r.holds, r.common_zero))
            })();
            let (holds, common_zero) = outcome.unwrap_or((false, false));
            InterlacingEntry { from: w[0].clone(), to: w[1].clone(), holds, common_zero }
        })
        .collect();

    let indices: Vec<IndexReport> = results.into_iter().map(|(r, _)| r).collect();
    let all_normal = indices.iter().all(|r| r.normality.normal);
    let zero_location = indices.iter().all(|r| r.zero_location);
    let orthogonality = indices.iter().all(|r| r.residuals.ok);
    let inter = interlacing.iter().all(|e| e.holds);
    let summary = ScanSummary {
        indices: indices.len(),
        all_normal,
        zero_location,
        orthogonality,
        interlacing: inter,
        passed: all_normal && zero_location && orthogonality && inter,
    };
    Ok(ScanReport {
        m1: pair.m1(),
        m2: pair.m2(),
        budget,
        precision: pair.root().positions()[0].precision(),
        indices,
        interlacing,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::measures::desk;

    #[test]
    fn toy_pair_scan_passes() {
        let (a, b) = desk::toy_chains();
        let pair = CompatiblePair::<Rational>::from_chains(a, b).unwrap();
        let r = perfectness_scan(&pair, 3).unwrap();
        assert!(r.summary.passed, "{:#?}", r.summary);
        assert_eq!(r.indices.len(), combined_indices(pair.m1(), pair.m2(), 3).len());
    }

    #[test]
    fn budget_one_is_trivial() {
        let (a, b) = desk::toy_chains();
        let pair = CompatiblePair::<Rational>::from_chains(a, b).unwrap();
        let r = perfectness_scan(&pair, 1).unwrap();
        assert!(r.summary.passed);
        assert!(r.indices.iter().all(|i| i.normality.degrees.iter().filter(|&&d| d == 0).count() == 1));
        assert!(perfectness_scan(&pair, 7).is_err());
    }
}
