//! Aggregates summary CSVs into per-configuration means with 95% intervals.

use std::path::Path;

use serde::Serialize;

use crate::error::CliError;
use crate::runner::{read_summary, SummaryRow};

/// z for a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

/// Mean and normal-approximation 95% half-width (sample standard deviation).
pub fn mean_ci(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, Z95 * var.sqrt() / n.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub problem: String,
    pub generator: String,
    pub fitness: String,
    pub runs: usize,
    pub feasible_mean: f64,
    pub feasible_ci: f64,
    pub controlled_mean: f64,
    pub controlled_ci: f64,
    pub unique_mean: f64,
    pub unique_ci: f64,
    /// Over the runs whose relative increase is defined.
    pub relative_increase_mean: Option<f64>,
    pub relative_increase_ci: Option<f64>,
}

/// Groups rows by (problem, generator, fitness) in first-seen order.
pub fn aggregate(rows: &[SummaryRow]) -> Vec<AggregateRow> {
    let mut keys: Vec<(&str, &str, &str)> = Vec::new();
    for row in rows {
        let key = (row.problem.as_str(), row.generator.as_str(), row.fitness.as_str());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(problem, generator, fitness)| {
            let group: Vec<&SummaryRow> = rows
                .iter()
                .filter(|r| r.problem == problem && r.generator == generator && r.fitness == fitness)
                .collect();
            let column = |f: fn(&SummaryRow) -> usize| mean_ci(&group.iter().map(|r| f(r) as f64).collect::<Vec<_>>());
            let (feasible_mean, feasible_ci) = column(|r| r.feasible);
            let (controlled_mean, controlled_ci) = column(|r| r.controlled);
            let (unique_mean, unique_ci) = column(|r| r.unique);
            let increases: Vec<f64> = group.iter().filter_map(|r| r.relative_increase).collect();
            let (inc_mean, inc_ci) = mean_ci(&increases);
            AggregateRow {
                problem: problem.into(),
                generator: generator.into(),
                fitness: fitness.into(),
                runs: group.len(),
                feasible_mean,
                feasible_ci,
                controlled_mean,
                controlled_ci,
                unique_mean,
                unique_ci,
                relative_increase_mean: (!increases.is_empty()).then_some(inc_mean),
                relative_increase_ci: (!increases.is_empty()).then_some(inc_ci),
            }
        })
        .collect()
}

pub fn compare_files(paths: &[impl AsRef<Path>]) -> Result<Vec<AggregateRow>, CliError> {
    if paths.is_empty() {
        return Err(CliError::Invalid("compare needs at least one summary CSV".into()));
    }
    let mut rows = Vec::new();
    for path in paths {
        rows.extend(read_summary(path.as_ref())?);
    }
    Ok(aggregate(&rows))
}

/// The aggregate table as CSV text.
pub fn to_csv(rows: &[AggregateRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("aggregate rows serialize");
    }
    String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("csv output is UTF-8")
}
