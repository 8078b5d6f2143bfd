//! Summary statistics over a set of experiment records: per-(config, k)
//! mean and minimum relative quality, and geometric-mean speedups against a
//! baseline config measured cell by cell.

use crate::runner::{ExperimentRecord, RunStatus};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub config: String,
    pub k: usize,
    pub cells: usize,
    pub mean_rel_quality: f64,
    pub min_rel_quality: f64,
    /// Geometric mean of `t_baseline / t_config` over cells where both
    /// finished; > 1 means faster than the baseline.
    pub geo_speedup_vs_baseline: Option<f64>,
}

pub fn compare_report(records: &[ExperimentRecord], baseline_config: &str) -> Vec<ReportRow> {
    // (instance, k) -> baseline median time
    let mut baseline_times: BTreeMap<(&str, usize), u64> = BTreeMap::new();
    for r in records {
        if r.config == baseline_config && r.status == RunStatus::Ok {
            if let Some(t) = r.median_ns {
                baseline_times.insert((r.instance.as_str(), r.k), t);
            }
        }
    }
    let mut groups: BTreeMap<(&str, usize), Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        if r.status == RunStatus::Ok {
            groups.entry((r.config.as_str(), r.k)).or_default().push(r);
        }
    }
    let mut rows = Vec::new();
    for ((config, k), cells) in groups {
        let rels: Vec<f64> = cells.iter().filter_map(|r| r.rel_quality).collect();
        if rels.is_empty() {
            continue;
        }
        let mean = rels.iter().sum::<f64>() / rels.len() as f64;
        let min = rels.iter().copied().fold(f64::INFINITY, f64::min);
        let mut log_sum = 0.0;
        let mut ratio_count = 0usize;
        for r in cells.iter() {
            let base = baseline_times.get(&(r.instance.as_str(), r.k));
            if let (Some(&base), Some(mine)) = (base, r.median_ns) {
                if base > 0 && mine > 0 {
                    log_sum += (base as f64 / mine as f64).ln();
                    ratio_count += 1;
                }
            }
        }
        rows.push(ReportRow {
            config: config.to_string(),
            k,
            cells: cells.len(),
            mean_rel_quality: mean,
            min_rel_quality: min,
            geo_speedup_vs_baseline: (ratio_count > 0)
                .then(|| (log_sum / ratio_count as f64).exp()),
        });
    }
    rows
}

pub fn render_table(rows: &[ReportRow], baseline_config: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<34} {:>3} {:>6} {:>10} {:>10} {:>12}",
        "config", "k", "cells", "mean_rel", "min_rel", "speedup"
    );
    let _ = writeln!(out, "(speedup = geometric-mean time ratio vs {baseline_config})");
    for row in rows {
        let speedup = row
            .geo_speedup_vs_baseline
            .map(|s| format!("{s:.3}"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<34} {:>3} {:>6} {:>10.6} {:>10.6} {:>12}",
            row.config, row.k, row.cells, row.mean_rel_quality, row.min_rel_quality, speedup
        );
    }
    out
}
