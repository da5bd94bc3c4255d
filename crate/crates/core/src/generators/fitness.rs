use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::eval::ArtifactReport;

/// Which staged objective drives selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitnessKind {
    /// Quality only.
    Q,
    /// Quality, then controllability.
    Qt,
    /// Quality, then controllability, then population diversity.
    Qtd,
}

impl FitnessKind {
    pub const ALL: [FitnessKind; 3] = [FitnessKind::Q, FitnessKind::Qt, FitnessKind::Qtd];

    pub fn score(self, q: f64, t: f64, d: f64) -> f64 {
        match self {
            FitnessKind::Q => q,
            FitnessKind::Qt => stage_qt(q, t),
            FitnessKind::Qtd => stage_qtd(q, t, d),
        }
    }

    /// Whether the score depends on the rest of the population.
    pub fn uses_diversity(self) -> bool {
        self == FitnessKind::Qtd
    }
}

impl fmt::Display for FitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitnessKind::Q => "q",
            FitnessKind::Qt => "qt",
            FitnessKind::Qtd => "qtd",
        })
    }
}

impl FromStr for FitnessKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(FitnessKind::Q),
            "qt" => Ok(FitnessKind::Qt),
            "qtd" => Ok(FitnessKind::Qtd),
            other => Err(format!("unknown fitness `{other}` (expected q, qt or qtd)")),
        }
    }
}

fn stage_qt(q: f64, t: f64) -> f64 {
    if q < 1.0 {
        q / 2.0
    } else {
        (q + t) / 2.0
    }
}

fn stage_qtd(q: f64, t: f64, d: f64) -> f64 {
    if q < 1.0 {
        q / 3.0
    } else if t < 1.0 {
        (q + t) / 3.0
    } else {
        (q + t + d) / 3.0
    }
}

pub fn fitness_q(report: &ArtifactReport) -> f64 {
    report.quality
}

pub fn fitness_qt(report: &ArtifactReport) -> f64 {
    stage_qt(report.quality, report.controllability)
}

/// `d` is the artifact's diversity against the current population.
pub fn fitness_qtd(report: &ArtifactReport, d: f64) -> f64 {
    stage_qtd(report.quality, report.controllability, d)
}
