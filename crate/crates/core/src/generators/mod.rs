//! Baseline generators: random search, a μ+λ evolution strategy, a genetic
//! algorithm, and a constructive maze-based method.

mod config;
mod constructive;
mod fitness;
mod search;

pub use config::{rng_for_run, SearchConfig};
pub use constructive::{constructive_batch, prim_maze, run_constructive, CONSTRUCTIVE_PROBLEMS};
pub use fitness::{fitness_q, fitness_qt, fitness_qtd, FitnessKind};
pub use search::{
    run_es, run_ga, run_random, run_search, run_search_observed, Chromosome, GenerationRecord, RunResult, SearchKind,
};
