//! Result files.
//!
//! Layout under the output directory:
//!
//! ```text
//! manifest.toml            resolved config; re-run it to reproduce everything
//! summary.json             one entry per run, system satisfaction per scheme
//! seed_<s>/sinr_cdf.csv    scheme,i_max,sinr_db,cdf
//! seed_<s>/throughput.csv  scheme,i_max,satellite_id,mbps
//! seed_<s>/lifetime_cdf.csv scheme,i_max,time_s,cdf
//! seed_<s>/satisfaction.csv scheme,i_max,ue_id,satisfaction
//! ```
//!
//! Floats are written in shortest round-trip form, so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::engine::MetricsReport;
use crate::error::{Error, Result};
use crate::experiment::ExperimentResult;

pub const SINR_HEADER: &str = "scheme,i_max,sinr_db,cdf";
pub const THROUGHPUT_HEADER: &str = "scheme,i_max,satellite_id,mbps";
pub const LIFETIME_HEADER: &str = "scheme,i_max,time_s,cdf";
pub const SATISFACTION_HEADER: &str = "scheme,i_max,ue_id,satisfaction";

#[derive(Debug, Serialize)]
struct RunSummary<'a> {
    scheme: &'a str,
    i_max: usize,
    seed: u64,
    scene_hash: &'a str,
    slot_count: u64,
    active_ues: usize,
    mean_satellite_throughput_mbps: f64,
    satellite_throughput_mbps: &'a [f64],
    mean_illuminated: &'a [f64],
    median_sinr_db: Option<f64>,
    sinr_samples: usize,
    completed_packets: usize,
    incomplete_packets: usize,
    system_satisfaction: Option<f64>,
    conserved: bool,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    runs: Vec<RunSummary<'a>>,
    /// Scheme → mean over every run of that scheme.
    system_satisfaction: BTreeMap<&'a str, f64>,
    /// I_max → scheme → mean over seeds.
    system_satisfaction_by_i_max: BTreeMap<usize, BTreeMap<&'a str, f64>>,
}

fn cdf_rows(out: &mut String, scheme: &str, i_max: usize, sorted: &[f64]) {
    let n = sorted.len();
    for (i, v) in sorted.iter().enumerate() {
        let cdf = if i + 1 == n { 1.0 } else { (i + 1) as f64 / n as f64 };
        let _ = writeln!(out, "{scheme},{i_max},{v},{cdf}");
    }
}

pub fn sinr_csv<'a>(reports: impl IntoIterator<Item = &'a MetricsReport>) -> String {
    let mut s = format!("{SINR_HEADER}\n");
    for r in reports {
        cdf_rows(&mut s, r.scheme.name(), r.i_max, &r.sinr_db);
    }
    s
}

pub fn throughput_csv<'a>(reports: impl IntoIterator<Item = &'a MetricsReport>) -> String {
    let mut s = format!("{THROUGHPUT_HEADER}\n");
    for r in reports {
        for (m, mbps) in r.satellite_throughput_mbps.iter().enumerate() {
            let _ = writeln!(s, "{},{},{m},{mbps}", r.scheme.name(), r.i_max);
        }
    }
    s
}

pub fn lifetime_csv<'a>(reports: impl IntoIterator<Item = &'a MetricsReport>) -> String {
    let mut s = format!("{LIFETIME_HEADER}\n");
    for r in reports {
        cdf_rows(&mut s, r.scheme.name(), r.i_max, &r.lifetimes_s);
    }
    s
}

pub fn satisfaction_csv<'a>(reports: impl IntoIterator<Item = &'a MetricsReport>) -> String {
    let mut s = format!("{SATISFACTION_HEADER}\n");
    for r in reports {
        for u in &r.ue_satisfaction {
            let _ = writeln!(s, "{},{},{},{}", r.scheme.name(), r.i_max, u.ue_id, u.satisfaction);
        }
    }
    s
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn summary_json(result: &ExperimentResult) -> String {
    let runs = result
        .runs
        .iter()
        .map(|o| {
            let r = &o.report;
            RunSummary {
                scheme: r.scheme.name(),
                i_max: r.i_max,
                seed: r.seed,
                scene_hash: &o.scene_hash,
                slot_count: r.slot_count,
                active_ues: r.ue_satisfaction.len(),
                mean_satellite_throughput_mbps: r.mean_satellite_throughput_mbps,
                satellite_throughput_mbps: &r.satellite_throughput_mbps,
                mean_illuminated: &r.mean_illuminated,
                median_sinr_db: r.median_sinr_db(),
                sinr_samples: r.sinr_db.len(),
                completed_packets: r.lifetimes_s.len(),
                incomplete_packets: r.incomplete_packets,
                system_satisfaction: r.system_satisfaction,
                conserved: r.conserved,
            }
        })
        .collect();

    let mut by_scheme: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut by_imax: BTreeMap<usize, BTreeMap<&str, Vec<f64>>> = BTreeMap::new();
    for o in &result.runs {
        if let Some(s) = o.report.system_satisfaction {
            let name = o.report.scheme.name();
            by_scheme.entry(name).or_default().push(s);
            by_imax.entry(o.report.i_max).or_default().entry(name).or_default().push(s);
        }
    }
    let summary = Summary {
        runs,
        system_satisfaction: by_scheme.into_iter().map(|(k, v)| (k, mean(&v))).collect(),
        system_satisfaction_by_i_max: by_imax
            .into_iter()
            .map(|(i, m)| (i, m.into_iter().map(|(k, v)| (k, mean(&v))).collect()))
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
    s.push('\n');
    s
}

fn write(path: PathBuf, text: &str) -> Result<PathBuf> {
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes every result file under `dir` and returns their paths.
pub fn emit_results(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = vec![
        write(dir.join("manifest.toml"), &result.config.to_toml())?,
        write(dir.join("summary.json"), &summary_json(result))?,
    ];
    for s in &result.scenes {
        let sub = dir.join(format!("seed_{}", s.seed));
        std::fs::create_dir_all(&sub).map_err(|e| Error::io(&sub, e))?;
        let reports: Vec<&MetricsReport> = result.runs_for_seed(s.seed).map(|o| &o.report).collect();
        files.push(write(sub.join("sinr_cdf.csv"), &sinr_csv(reports.iter().copied()))?);
        files.push(write(sub.join("throughput.csv"), &throughput_csv(reports.iter().copied()))?);
        files.push(write(sub.join("lifetime_cdf.csv"), &lifetime_csv(reports.iter().copied()))?);
        files.push(write(sub.join("satisfaction.csv"), &satisfaction_csv(reports.iter().copied()))?);
    }
    Ok(files)
}
