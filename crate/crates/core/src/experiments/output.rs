//! Table emission: CSV, JSON and gnuplot data files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::convergence::ConvergenceTable;

fn io(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("output: {e}"))
}

/// One line per row: index, |n|, then the sup-error of each component.
pub fn convergence_csv(t: &ConvergenceTable) -> Result<String> {
    let comps = t.rows.first().map_or(0, |r| r.sup_error.len());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string(), "norm".to_string()];
    header.extend((0..comps).map(|k| format!("sup_error_{k}")));
    w.write_record(&header).map_err(io)?;
    for r in &t.rows {
        let mut rec = vec![r.index.to_string(), r.norm.to_string()];
        rec.extend(r.sup_error.iter().cloned());
        w.write_record(&rec).map_err(io)?;
    }
    String::from_utf8(w.into_inner().map_err(io)?).map_err(io)
}

/// Whitespace-separated columns |n| and log10 of each sup-error; exact zeros are written as `NaN`.
pub fn convergence_gnuplot(t: &ConvergenceTable) -> String {
    let comps = t.rows.first().map_or(0, |r| r.sup_error.len());
    let mut out = String::from("# norm");
    for k in 0..comps {
        out.push_str(&format!(" log10_err_{k}"));
    }
    out.push('\n');
    for r in &t.rows {
        out.push_str(&r.norm.to_string());
        for e in &r.sup_error_log2 {
            match e {
                Some(l) => out.push_str(&format!(" {:.6}", l * std::f64::consts::LOG10_2)),
                None => out.push_str(" NaN"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(io)
}

/// Writes `<stem>.csv`, `<stem>.json` and `<stem>.dat` into `dir`.
pub fn write_convergence(dir: &Path, stem: &str, t: &ConvergenceTable) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io)?;
    let files = [
        (dir.join(format!("{stem}.csv")), convergence_csv(t)?),
        (dir.join(format!("{stem}.json")), to_json(t)?),
        (dir.join(format!("{stem}.dat")), convergence_gnuplot(t)),
    ];
    let mut paths = Vec::new();
    for (p, body) in files {
        fs::write(&p, body).map_err(io)?;
        paths.push(p);
    }
    Ok(paths)
}
