//! Experiment harness behind the `pcgbench` command.

pub mod compare;
pub mod config;
pub mod error;
pub mod render;
pub mod runner;

use pcgbench_core::registry::{self, RESERVED};

pub use compare::{aggregate, compare_files, mean_ci, AggregateRow};
pub use config::{ExperimentConfig, GeneratorKind};
pub use error::CliError;
pub use runner::{read_summary, run_experiment, PopulationEntry, RunSummary, SummaryRow, SUMMARY_COLUMNS};

/// Registered problems with their default variants, then the reserved names.
pub fn list_table() -> String {
    let names = registry::names();
    let width = names.iter().chain(RESERVED).map(|n| n.len()).max().unwrap_or(0) + " (reserved)".len();
    let mut out = format!("{:width$}  DEFAULT VARIANT\n", "PROBLEM");
    for name in names {
        let params = registry::default_params(name).expect("registered names have defaults");
        out.push_str(&format!("{name:width$}  {params}\n"));
    }
    for name in RESERVED {
        out.push_str(&format!("{:width$}  -\n", format!("{name} (reserved)")));
    }
    out
}
