use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use nikishin::exactnum::{format_rational, parse_rational, Polynomial, Rational, Scalar};
use nikishin::experiments::{
    carleman_report, default_points, identity_suite, segment_grid, stieltjes_convergence, write_convergence,
    ConvergenceSetup, Point,
};
use nikishin::hermitepade::{
    biorthogonal_sequences, multi_indices, normality_check, perfectness_scan, solve_mixed, solve_type1, solve_type2,
    step_line, CombinedIndex, CompatiblePair, MultiIndex,
};
use nikishin::measures::config::MeasureSpec;
use nikishin::measures::{
    inverse_decomposition, validate_chain, LoadedSystem, MomentSequence, NikishinSystem, Preset, SystemDef, SystemFile,
};
use nikishin::rootloc::{at_system_zero_bound, left_of_delta1};

use crate::args::{AtArgs, ConvergeArgs, IdentityArgs, InverseArgs, ScanArgs, SolveArgs, SolveType, SystemArgs};
use crate::summary::{self as keys, SummaryLine};
use crate::{CliError, CliResult, Outcome};

/// Environment variable overriding the big-float precision of system files.
pub const PRECISION_VAR: &str = "NIKISHIN_PRECISION_BITS";

/// Moments used for the Carleman partial sums of preset weights.
const CARLEMAN_TERMS: usize = 200;

pub fn precision_override() -> CliResult<Option<usize>> {
    match std::env::var(PRECISION_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{PRECISION_VAR}={v:?} is not a bit count"))),
        Err(_) => Ok(None),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_system(path: &Path) -> CliResult<SystemFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(SystemFile::parse(&text)?)
}

fn load(a: &SystemArgs, prec: Option<usize>) -> CliResult<(SystemFile, LoadedSystem)> {
    let file = read_system(&a.system)?;
    let loaded = file.load(prec)?;
    Ok((file, loaded))
}

/// Runs `$body` with `$def` bound to the chains in whichever backend the file selected.
macro_rules! with_backend {
    ($loaded:expr, $def:ident => $body:expr) => {
        match $loaded {
            LoadedSystem::Rational($def) => $body,
            LoadedSystem::BigFloat($def, _) => $body,
        }
    };
}

fn precision_of(loaded: &LoadedSystem) -> Option<usize> {
    match loaded {
        LoadedSystem::Rational(_) => None,
        LoadedSystem::BigFloat(_, p) => Some(*p),
    }
}

/// The pair (first chain, second chain), or the first chain against its root alone.
fn build_pair<S: Scalar>(def: &SystemDef<S>) -> CliResult<CompatiblePair<S>> {
    if def.chain.first_label != 0 {
        return Err(CliError::Input("mixed problems need a system starting at σ_0 (first_label 0)".into()));
    }
    Ok(match &def.second {
        Some(c2) => CompatiblePair::from_chains(def.chain.clone(), c2.clone())?,
        None => CompatiblePair::type1(&validate_chain(def.chain.clone())?)?,
    })
}

fn poly_strings<S: Scalar>(p: &Polynomial<S>) -> String {
    p.to_string()
}

pub fn validate(a: &SystemArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let (_, loaded) = load(a, prec)?;
    let precision = precision_of(&loaded);
    with_backend!(loaded, def => validate_in(&def, precision))
}

fn validate_in<S: Scalar>(def: &SystemDef<S>, precision: Option<usize>) -> CliResult<Outcome> {
    let describe = |sys: &NikishinSystem<S>| {
        let hulls: Vec<[String; 2]> = sys
            .measures()
            .iter()
            .map(|m| {
                let (lo, hi) = m.hull_bounds();
                [format_rational(&lo), format_rational(&hi)]
            })
            .collect();
        json!({
            "first_label": sys.first_label(),
            "atoms": sys.measures().iter().map(|m| m.len()).collect::<Vec<_>>(),
            "signs": sys.measures().iter().map(|m| m.sign()).collect::<Vec<_>>(),
            "atom_hulls": hulls,
            "record": to_value(sys.record()),
        })
    };
    let first = validate_chain(def.chain.clone())?;
    let mut report = json!({ "precision": precision, "system": describe(&first) });
    let mut detail = format!("{} generators, atoms {:?}", first.len(), first.measures().iter().map(|m| m.len()).collect::<Vec<_>>());
    if let Some(c2) = &def.second {
        let second = validate_chain(c2.clone())?;
        CompatiblePair::new(first.clone(), second.clone())?;
        report["second"] = describe(&second);
        detail.push_str(&format!("; second system with {} generators", second.len()));
    }
    Ok(Outcome::new("validate", vec![SummaryLine::new("SYS", keys::SYS, true, detail)], report))
}

pub fn solve(a: &SolveArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let (_, loaded) = load(&a.system, prec)?;
    with_backend!(loaded, def => solve_in(&def, a))
}

fn solve_in<S: Scalar>(def: &SystemDef<S>, a: &SolveArgs) -> CliResult<Outcome> {
    let sys = || -> CliResult<NikishinSystem<S>> {
        if def.chain.first_label != 0 {
            return Err(CliError::Input("solvers need a system starting at σ_0 (first_label 0)".into()));
        }
        Ok(validate_chain(def.chain.clone())?)
    };
    let (report, normality, headline) = match a.kind {
        SolveType::Type2 => {
            let n = MultiIndex::parse(&a.index)?;
            let s = solve_type2(&sys()?, &n)?;
            let report = json!({
                "type": "type2",
                "index": to_value(&s.index),
                "q": poly_strings(&s.q),
                "p": s.p.iter().map(poly_strings).collect::<Vec<_>>(),
                "remainder_orders": s.remainder_orders,
                "kernel_dimension": s.kernel_dimension,
            });
            (report, normality_check(&s), format!("Q = {}", s.q))
        }
        SolveType::Type1 => {
            let n = MultiIndex::parse(&a.index)?;
            let s = solve_type1(&sys()?, &n)?;
            let report = json!({
                "type": "type1",
                "index": to_value(&s.index),
                "a": s.a.iter().map(poly_strings).collect::<Vec<_>>(),
                "b": poly_strings(&s.b),
                "remainder_order": s.remainder_order,
                "kernel_dimension": s.kernel_dimension,
            });
            let first = s.a.iter().map(|p| format!("[{p}]")).collect::<Vec<_>>().join(" ");
            (report, normality_check(&s), format!("a = {first}"))
        }
        SolveType::Mixed => {
            let n = CombinedIndex::parse(&a.index)?;
            let pair = build_pair(def)?;
            let s = solve_mixed(&pair, &n)?;
            let report = json!({
                "type": "mixed",
                "index": to_value(&s.index),
                "a": s.a.iter().map(poly_strings).collect::<Vec<_>>(),
                "kernel_dimension": s.kernel_dimension,
            });
            let first = s.a.iter().map(|p| format!("[{p}]")).collect::<Vec<_>>().join(" ");
            (report, normality_check(&s), format!("a = {first}"))
        }
    };
    let mut report = report;
    report["normality"] = to_value(&normality);
    let line = SummaryLine::new(
        "T3",
        keys::T3,
        normality.normal && normality.kernel_dim == 1,
        format!("{headline}; degrees {:?}, kernel dimension {}", normality.degrees, normality.kernel_dim),
    );
    Ok(Outcome::new("solve", vec![line], report))
}

pub fn scan(a: &ScanArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let (_, loaded) = load(&a.system, prec)?;
    with_backend!(loaded, def => scan_in(&def, a.budget))
}

fn scan_in<S: Scalar>(def: &SystemDef<S>, budget: usize) -> CliResult<Outcome> {
    let pair = build_pair(def)?;
    let r = perfectness_scan(&pair, budget)?;
    let s = &r.summary;
    let kernel_ok = r.indices.iter().all(|i| i.normality.kernel_dim == 1);
    let exact = r.indices.iter().filter(|i| i.residuals.exact_zero).count();
    let worst = r.indices.iter().filter_map(|i| i.residuals.max_log2_relative).fold(f64::NEG_INFINITY, f64::max);
    let resid = if worst == f64::NEG_INFINITY {
        "all orthogonality residuals exactly zero".to_string()
    } else {
        format!("{exact} exact residual sets, worst relative residual 2^{worst:.1}")
    };
    let bi = biorthogonal_sequences(
        &pair,
        &step_line(pair.m1() + 1, budget),
        &step_line(pair.m2() + 1, budget),
    );
    let (bi_ok, bi_detail, bi_value) = match &bi {
        Ok(b) => {
            let ok = b.off_band_zero() && b.band_nonzero();
            (ok, format!("step-line sequences to norm {budget}"), json!({ "off_band_zero": b.off_band_zero(), "band_nonzero": b.band_nonzero() }))
        }
        Err(e) => (false, format!("not run: {e}"), json!({ "error": e.to_string() })),
    };
    let lines = vec![
        SummaryLine::new(
            "T3",
            keys::T3,
            s.all_normal && kernel_ok,
            format!("{} indices with |n1| <= {budget}", s.indices),
        ),
        SummaryLine::new("T2", keys::T2, s.zero_location && s.orthogonality, resid),
        SummaryLine::new("C1", keys::C1, bi_ok, bi_detail),
        SummaryLine::new("C3", keys::C3, s.interlacing, format!("{} consecutive diagonal pairs", r.interlacing.len())),
    ];
    let mut report = to_value(&r);
    report["biorthogonality"] = bi_value;
    Ok(Outcome::new("scan", lines, report))
}

fn parse_points(s: &str) -> CliResult<Vec<Point>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let parts: Vec<&str> = p.split(',').map(str::trim).collect();
            let re = parse_rational(parts[0])?;
            let im = match parts.get(1) {
                Some(v) => parse_rational(v)?,
                None => Rational::from_i64(0),
            };
            if parts.len() > 2 {
                return Err(CliError::Input(format!("point {p:?} has more than two parts")));
            }
            Ok(Point::new(re, im))
        })
        .collect()
}

pub fn identities(a: &IdentityArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let points = match &a.points {
        Some(s) => parse_points(s)?,
        None => default_points(),
    };
    let (_, loaded) = load(&a.system, prec)?;
    with_backend!(loaded, def => identities_in(&def, &points))
}

fn identities_in<S: Scalar>(def: &SystemDef<S>, points: &[Point]) -> CliResult<Outcome> {
    let mut suites = vec![identity_suite(&validate_chain(def.chain.clone())?, points)?];
    if let Some(c2) = &def.second {
        suites.push(identity_suite(&validate_chain(c2.clone())?, points)?);
    }
    let results: Vec<_> = suites.iter().flat_map(|s| s.results.iter()).collect();
    let failed: Vec<String> =
        results.iter().filter(|r| !r.passed).map(|r| format!("{} {:?}", r.id, r.measures)).collect();
    let exact = results.iter().all(|r| r.residuals.iter().all(|p| p.exact_zero));
    let detail = if failed.is_empty() {
        format!("{} checks{}", results.len(), if exact { ", all residuals exactly zero" } else { "" })
    } else {
        format!("failed: {}", failed.join(", "))
    };
    let line = SummaryLine::new("ID", keys::ID, failed.is_empty(), detail);
    Ok(Outcome::new("identities", vec![line], to_value(&suites)))
}

pub fn at_test(a: &AtArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let (_, loaded) = load(&a.system, prec)?;
    with_backend!(loaded, def => at_in(&def, a))
}

fn at_in<S: Scalar>(def: &SystemDef<S>, a: &AtArgs) -> CliResult<Outcome> {
    let sys = validate_chain(def.chain.clone())?;
    let from = a.from.unwrap_or(if sys.len() > 1 { 1 } else { 0 });
    let tail = sys.tail(from, 1)?;
    let delta = left_of_delta1(&tail);
    let reports = multi_indices(tail.len() + 1, 1, a.max_norm)
        .iter()
        .map(|n| at_system_zero_bound(&tail, n, a.trials, a.seed, &delta))
        .collect::<nikishin::Result<Vec<_>>>()?;
    let worst = reports.iter().map(|r| r.max_off_delta1 as isize - r.bound as isize).max().unwrap_or(0);
    let ok = reports.iter().all(|r| r.certified);
    let detail = format!(
        "{} indices with |n| <= {}, {} trials each, seed {}, worst excess over |n| - 1: {worst}",
        reports.len(),
        a.max_norm,
        a.trials,
        a.seed
    );
    let report = json!({ "from": from, "seed": a.seed, "trials": a.trials, "indices": to_value(&reports) });
    Ok(Outcome::new("at-test", vec![SummaryLine::new("T1", keys::T1, ok, detail)], report))
}

fn parse_grid(s: &str) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!("grid {s:?} must be lo,hi,count")));
    }
    let (lo, hi) = (parse_rational(parts[0])?, parse_rational(parts[1])?);
    let count: usize = parts[2].parse().map_err(|_| CliError::Input(format!("bad grid count {:?}", parts[2])))?;
    if count == 0 || lo > hi {
        return Err(CliError::Input(format!("empty grid {s:?}")));
    }
    Ok(segment_grid(&lo, &hi, count))
}

pub fn converge(a: &ConvergeArgs, prec: Option<usize>) -> CliResult<Outcome> {
    let grid = parse_grid(&a.grid)?;
    let (file, loaded) = load(&a.system, prec)?;
    let precision = precision_of(&loaded).unwrap_or(nikishin::exactnum::bigfloat::DEFAULT_PRECISION);
    let mut out = with_backend!(loaded, def => converge_in(&def, a, grid.clone()))?;
    // moment growth of the root weight, when it is a named preset
    if let Some(MeasureSpec::Preset(p)) = file.measures.first() {
        let preset = Preset::from_name(&p.preset)?;
        let c = carleman_report(|n| preset.moment(n, precision), CARLEMAN_TERMS);
        out.report["carleman"] = json!({ "preset": preset.name(), "report": to_value(&c) });
    }
    Ok(out)
}

fn converge_in<S: Scalar>(def: &SystemDef<S>, a: &ConvergeArgs, grid: Vec<Rational>) -> CliResult<Outcome> {
    let sys = validate_chain(def.chain.clone())?;
    let setup = ConvergenceSetup { lambda: step_line(sys.len(), a.max_norm), grid, c: a.c, fit_from: a.fit_from };
    let t = stieltjes_convergence(&sys, &setup)?;
    if let Some(dir) = &a.tables {
        write_convergence(dir, "convergence", &t)?;
    }
    let trend = match (t.slope, t.exact_from) {
        (_, Some(k)) => (true, format!("errors exactly zero from |n| = {k}")),
        (Some(s), None) => (s < a.max_slope, format!("slope of ln error {s:.4} per unit |n| (required < {})", a.max_slope)),
        (None, None) => (false, "too few rows to fit a slope".to_string()),
    };
    let ok = t.non_increasing && trend.0;
    let detail = format!(
        "{} rows along the step line, {}non-increasing from |n| = {}, {}",
        t.rows.len(),
        if t.non_increasing { "" } else { "not " },
        a.fit_from,
        trend.1
    );
    Ok(Outcome::new("converge", vec![SummaryLine::new("C2", keys::C2, ok, detail)], to_value(&t)))
}

fn read_moments(a: &InverseArgs) -> CliResult<Vec<Rational>> {
    let raw: Vec<String> = match (&a.moments, &a.moments_file) {
        (Some(s), None) => s.split(',').map(|v| v.trim().to_string()).collect(),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if text.trim_start().starts_with('[') {
                serde_json::from_str::<Vec<String>>(&text).map_err(|e| CliError::Input(e.to_string()))?
            } else {
                text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect()
            }
        }
        _ => return Err(CliError::Input("give exactly one of --moments and --moments-file".into())),
    };
    raw.iter().map(|v| parse_rational(v).map_err(CliError::from)).collect()
}

pub fn inverse(a: &InverseArgs) -> CliResult<Outcome> {
    let c = MomentSequence::new(read_moments(a)?)?;
    let d = inverse_decomposition(&c, a.n)?;
    let rows = d.rows(&c);
    let rows_ok = rows.iter().enumerate().all(|(i, r)| *r == Rational::from_i64(if i == 0 { 1 } else { 0 }));
    let taus: Vec<String> = d.tau_moments.values().iter().map(format_rational).collect();
    let mut shown = vec![format!("d₋₂={}", format_rational(&d.d_minus2)), format!("d₋₁={}", format_rational(&d.d_minus1))];
    shown.extend(taus.iter().enumerate().map(|(k, v)| format!("d{}={v}", subscript(k))));
    let report = json!({
        "d_minus2": format_rational(&d.d_minus2),
        "d_minus1": format_rational(&d.d_minus1),
        "tau_moments": taus,
        "tau_sign": d.tau_sign,
        "rows": rows.iter().map(format_rational).collect::<Vec<_>>(),
    });
    let line = SummaryLine::new("L4", keys::L4, rows_ok, shown.join(", "));
    Ok(Outcome::new("inverse", vec![line], report))
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}
