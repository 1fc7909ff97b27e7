use std::cmp::Ordering;
use std::fmt::Write;

use crate::algos::{Algorithm, BenchmarkResult};
use crate::error::{Error, Result};
use crate::harness::archive::ResultsArchive;

pub const TABLE_IDS: [&str; 5] = ["chsh", "ghz", "qft", "grover", "qaoa"];

pub const FIGURE_IDS: [&str; 9] = [
    "chsh_bars",
    "ghz_vs_n",
    "qft_fid_vs_n",
    "qft_depth_bars",
    "grover_vs_k",
    "grover_peak_vs_n",
    "qaoa_ar_bars",
    "qaoa_feas_vs_density",
    "qaoa_hamming_vs_ar",
];

/// A generated `x,y,err` series.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotFile {
    pub name: String,
    pub contents: String,
}

fn algorithm_for(id: &str) -> Option<Algorithm> {
    Some(match id {
        "chsh" => Algorithm::Chsh,
        "ghz" => Algorithm::Ghz,
        "qft" => Algorithm::Qft,
        "grover" => Algorithm::Grover,
        "qaoa" => Algorithm::Qaoa,
        _ => return None,
    })
}

/// Rows shown in reports: single runs and per-device medians, not the
/// individual repeats behind a median.
fn reported_rows<'a>(archive: &'a ResultsArchive, alg: Algorithm, id: &str) -> Result<Vec<&'a BenchmarkResult>> {
    let mut rows: Vec<&BenchmarkResult> = archive
        .rows
        .iter()
        .filter(|r| r.algorithm == alg && !r.extras.contains_key("repeat"))
        .collect();
    if rows.is_empty() {
        return Err(Error::NoMatchingRows(id.to_string()));
    }
    rows.sort_by(|a, b| row_order(a, b));
    Ok(rows)
}

fn row_order(a: &BenchmarkResult, b: &BenchmarkResult) -> Ordering {
    a.device
        .cmp(&b.device)
        .then(a.n.cmp(&b.n))
        .then(a.extra_f64("k").partial_cmp(&b.extra_f64("k")).unwrap_or(Ordering::Equal))
        .then(a.extra_str("graph").cmp(&b.extra_str("graph")))
}

fn num(r: &BenchmarkResult, key: &str) -> f64 {
    r.extra_f64(key).unwrap_or(f64::NAN)
}

/// CSV rendering of one benchmark's results, one line per archive row,
/// ordered by device, then width, then iteration count or graph.
pub fn render_table(archive: &ResultsArchive, table_id: &str) -> Result<String> {
    let alg = algorithm_for(table_id).ok_or_else(|| Error::Config(format!("unknown table id {table_id:?}")))?;
    let rows = reported_rows(archive, alg, table_id)?;
    let mut out = String::new();
    let header = match alg {
        Algorithm::Chsh => "device,n,S_exp,err,S_ideal,shots",
        Algorithm::Ghz => "device,n,F_exp,err,F_ideal,shots",
        Algorithm::Qft => "device,n,F_exp,err,depth,F_ideal",
        Algorithm::Grover => "device,n,k,label,P_success,err",
        Algorithm::Qaoa => "device,graph,approx_ratio,err,feasibility_pct,success,mean_hamming",
    };
    out.push_str(header);
    out.push('\n');
    for r in rows {
        let line = match alg {
            Algorithm::Chsh => {
                format!("{},{},{:.3},{:.3},{:.3},{}", r.device, r.n, r.value, r.err, num(r, "S_ideal"), r.shots)
            }
            Algorithm::Ghz => {
                format!("{},{},{:.3},{:.3},{:.3},{}", r.device, r.n, r.value, r.err, num(r, "F_ideal"), r.shots)
            }
            Algorithm::Qft => format!(
                "{},{},{:.3},{:.3},{},{:.3}",
                r.device,
                r.n,
                r.value,
                r.err,
                num(r, "depth"),
                num(r, "F_ideal")
            ),
            Algorithm::Grover => format!(
                "{},{},{},{},{:.3},{:.3}",
                r.device,
                r.n,
                num(r, "k"),
                r.extra_str("label").unwrap_or(""),
                r.value,
                r.err
            ),
            Algorithm::Qaoa => format!(
                "{},{},{:.3},{:.3},{:.1},{:.3},{:.3}",
                r.device,
                r.extra_str("graph").unwrap_or(""),
                r.value,
                r.err,
                100.0 * num(r, "feasibility"),
                num(r, "success"),
                num(r, "mean_hamming")
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

fn file_safe(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Rounds to 9 decimals so float noise does not leak into data files.
fn tidy(v: f64) -> f64 {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 { 0.0 } else { r }
}

/// Groups `(series name, x, y, err)` points into one CSV per series, in
/// first-seen series order.
fn series_files(figure: &str, points: Vec<(String, f64, f64, f64)>) -> Vec<PlotFile> {
    let mut files: Vec<(String, String)> = Vec::new();
    for (series, x, y, err) in points {
        let name = format!("{figure}_{}.csv", file_safe(&series));
        let idx = match files.iter().position(|(n, _)| *n == name) {
            Some(i) => i,
            None => {
                files.push((name, "x,y,err\n".to_string()));
                files.len() - 1
            }
        };
        writeln!(files[idx].1, "{},{},{}", tidy(x), tidy(y), tidy(err)).expect("write to string");
    }
    files.into_iter().map(|(name, contents)| PlotFile { name, contents }).collect()
}

/// Plot series for a figure, one file per device (per device and width for
/// `grover_vs_k`).
pub fn emit_plot_data(archive: &ResultsArchive, figure_id: &str) -> Result<Vec<PlotFile>> {
    let (alg, _) = figure_id
        .split_once('_')
        .ok_or_else(|| Error::Config(format!("unknown figure id {figure_id:?}")))?;
    if !FIGURE_IDS.contains(&figure_id) {
        return Err(Error::Config(format!("unknown figure id {figure_id:?}")));
    }
    let alg = algorithm_for(alg).expect("figure ids start with a table id");
    let rows = reported_rows(archive, alg, figure_id)?;
    let dev = |r: &BenchmarkResult| r.device.clone();
    let points: Vec<(String, f64, f64, f64)> = match figure_id {
        "chsh_bars" => {
            let mut devices: Vec<String> = rows.iter().map(|r| r.device.clone()).collect();
            devices.dedup();
            let index = |d: &str| devices.iter().position(|x| x == d).expect("listed") as f64;
            let mut pts: Vec<_> = rows.iter().map(|r| (dev(r), index(&r.device), r.value, r.err)).collect();
            pts.extend(devices.iter().map(|d| ("classical_bound".to_string(), index(d), 2.0, 0.0)));
            pts
        }
        "ghz_vs_n" | "qft_fid_vs_n" => rows.iter().map(|r| (dev(r), r.n as f64, r.value, r.err)).collect(),
        "qft_depth_bars" => rows.iter().map(|r| (dev(r), r.n as f64, num(r, "depth"), 0.0)).collect(),
        "grover_vs_k" => rows
            .iter()
            .map(|r| (format!("{}_n{}", r.device, r.n), num(r, "k"), r.value, r.err))
            .collect(),
        "grover_peak_vs_n" => {
            let mut peaks: Vec<&BenchmarkResult> = Vec::new();
            for r in &rows {
                match peaks.iter_mut().find(|p| p.device == r.device && p.n == r.n) {
                    Some(p) if r.value > p.value => *p = r,
                    Some(_) => {}
                    None => peaks.push(r),
                }
            }
            peaks.iter().map(|r| (dev(r), r.n as f64, r.value, r.err)).collect()
        }
        "qaoa_ar_bars" => rows.iter().map(|r| (dev(r), num(r, "density"), r.value, r.err)).collect(),
        "qaoa_feas_vs_density" => rows
            .iter()
            .map(|r| {
                let f = num(r, "feasibility");
                (dev(r), num(r, "density"), f, (f * (1.0 - f) / r.shots as f64).max(0.0).sqrt())
            })
            .collect(),
        "qaoa_hamming_vs_ar" => rows
            .iter()
            .map(|r| (dev(r), r.value, num(r, "mean_hamming"), (num(r, "hamming_var") / r.shots as f64).sqrt()))
            .collect(),
        _ => unreachable!("checked against FIGURE_IDS"),
    };
    Ok(series_files(figure_id, points))
}
