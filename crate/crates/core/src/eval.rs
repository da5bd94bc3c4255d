//! Batch evaluation: content arrays in, quality/diversity/controllability reports out.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::info::InfoRecord;
use crate::problem::ProblemContract;
use crate::space::Value;

/// Per-artifact scores, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactReport {
    pub quality: f64,
    pub diversity: f64,
    pub controllability: f64,
    pub info: InfoRecord,
}

impl ArtifactReport {
    pub fn feasible(&self) -> bool {
        self.quality >= 1.0
    }

    pub fn unique(&self) -> bool {
        self.diversity >= 1.0
    }

    pub fn controlled(&self) -> bool {
        self.controllability >= 1.0
    }
}

/// Batch-level percentages plus the per-artifact reports, in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub r_quality: f64,
    pub r_diversity: f64,
    pub r_controllability: f64,
    pub artifacts: Vec<ArtifactReport>,
}

/// Evaluates a batch of contents (and optionally their paired controls).
///
/// Without controls every controllability value is 0. Diversity of artifact
/// `i` is the minimum pairwise diversity against every other member of the
/// batch, and 1 for a batch of one.
pub fn evaluate(
    problem: &dyn ProblemContract,
    contents: &[Value],
    controls: Option<&[Value]>,
) -> Result<BenchmarkReport, CoreError> {
    if contents.is_empty() {
        return Err(CoreError::EmptyBatch);
    }
    for (index, content) in contents.iter().enumerate() {
        problem
            .content_space()
            .check(content)
            .map_err(|e| CoreError::InvalidContent { index, reason: e.to_string() })?;
    }
    if let Some(controls) = controls {
        if controls.len() != contents.len() {
            return Err(CoreError::ControlCountMismatch {
                contents: contents.len(),
                controls: controls.len(),
            });
        }
        for (index, control) in controls.iter().enumerate() {
            problem
                .control_space()
                .check(control)
                .map_err(|e| CoreError::InvalidControl { index, reason: e.to_string() })?;
        }
    }

    let scored: Vec<(InfoRecord, f64, f64)> = contents
        .par_iter()
        .enumerate()
        .map(|(i, content)| {
            let info = problem.info(content);
            let quality = problem.quality(&info);
            let controllability = controls.map_or(0.0, |c| problem.controllability(&info, &c[i]));
            (info, quality, controllability)
        })
        .collect();
    let infos: Vec<&InfoRecord> = scored.iter().map(|(info, _, _)| info).collect();
    let diversity = set_diversity(problem, &infos);

    let artifacts: Vec<ArtifactReport> = scored
        .into_iter()
        .zip(diversity)
        .map(|((info, quality, controllability), diversity)| ArtifactReport {
            quality,
            diversity,
            controllability,
            info,
        })
        .collect();
    let n = artifacts.len();
    Ok(BenchmarkReport {
        r_quality: percentage(artifacts.iter().filter(|a| a.feasible()).count(), n),
        r_diversity: percentage(artifacts.iter().filter(|a| a.unique()).count(), n),
        r_controllability: percentage(artifacts.iter().filter(|a| a.controlled()).count(), n),
        artifacts,
    })
}

pub fn percentage(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

/// Minimum pairwise diversity of each member against the rest of the set.
pub fn set_diversity(problem: &dyn ProblemContract, infos: &[&InfoRecord]) -> Vec<f64> {
    if infos.len() == 1 {
        return vec![1.0];
    }
    (0..infos.len())
        .into_par_iter()
        .map(|i| {
            let mut min = 1.0f64;
            for (j, other) in infos.iter().enumerate() {
                if i == j {
                    continue;
                }
                min = min.min(problem.diversity(infos[i], other).clamp(0.0, 1.0));
                if min <= 0.0 {
                    break;
                }
            }
            min
        })
        .collect()
}

/// Number of members whose set diversity is 1. Stops scanning a member at its
/// first non-unique pair.
pub fn count_unique(problem: &dyn ProblemContract, infos: &[&InfoRecord]) -> usize {
    if infos.len() <= 1 {
        return infos.len();
    }
    (0..infos.len())
        .into_par_iter()
        .filter(|&i| {
            infos
                .iter()
                .enumerate()
                .all(|(j, other)| i == j || problem.diversity(infos[i], other) >= 1.0)
        })
        .count()
}
