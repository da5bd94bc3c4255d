//! Seeded multi-run experiments and their output tree.
//!
//! ```text
//! <output>/config.toml              effective configuration
//! <output>/logs/run_NNN.jsonl       one generation record per line
//! <output>/populations/run_NNN.jsonl final population, best first
//! <output>/llm/run_NNN.json         request outcomes (llm generator only)
//! <output>/summary.csv              one row per run
//! ```

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use pcgbench_core::generators::{constructive_batch, rng_for_run, run_search, Chromosome, GenerationRecord};
use pcgbench_core::{evaluate, ProblemContract, Value};
use pcgbench_llm::{run_llm_generator, HttpCompletion, PromptTemplate};
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, GeneratorKind};
use crate::error::CliError;

/// One member of a saved final population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationEntry {
    pub content: Value,
    pub control: Value,
    pub quality: f64,
    pub controllability: f64,
    pub diversity: f64,
    pub fitness: f64,
}

impl From<&Chromosome> for PopulationEntry {
    fn from(c: &Chromosome) -> Self {
        Self {
            content: c.content.clone(),
            control: c.control.clone(),
            quality: c.quality,
            controllability: c.controllability,
            diversity: c.diversity,
            fitness: c.fitness,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub run: usize,
    pub population: usize,
    pub feasible: usize,
    pub controlled: usize,
    pub unique: usize,
    pub max_fitness: Vec<f64>,
    pub mean_fitness: Vec<f64>,
}

impl RunSummary {
    fn from_log(run: usize, population: usize, log: &[GenerationRecord]) -> Self {
        let last = log.last().expect("a run log has at least the initial record");
        Self {
            run,
            population,
            feasible: last.feasible,
            controlled: last.controlled,
            unique: last.unique,
            max_fitness: log.iter().map(|r| r.max_fitness).collect(),
            mean_fitness: log.iter().map(|r| r.mean_fitness).collect(),
        }
    }

    /// `(final - initial) / initial` for the max fitness; absent when the
    /// initial max is 0.
    pub fn relative_increase(&self) -> Option<f64> {
        let (first, last) = (*self.max_fitness.first()?, *self.max_fitness.last()?);
        (first > 0.0).then(|| (last - first) / first)
    }
}

/// A line of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub generator: String,
    pub fitness: String,
    pub seed: u64,
    pub run: usize,
    pub population: usize,
    pub generations: usize,
    pub feasible: usize,
    pub controlled: usize,
    pub unique: usize,
    pub initial_max_fitness: f64,
    pub final_max_fitness: f64,
    pub relative_increase: Option<f64>,
}

pub const SUMMARY_COLUMNS: [&str; 13] = [
    "problem",
    "generator",
    "fitness",
    "seed",
    "run",
    "population",
    "generations",
    "feasible",
    "controlled",
    "unique",
    "initial_max_fitness",
    "final_max_fitness",
    "relative_increase",
];

impl SummaryRow {
    pub fn new(config: &ExperimentConfig, summary: &RunSummary) -> Self {
        Self {
            problem: config.problem.clone(),
            generator: config.generator.to_string(),
            fitness: config.fitness.to_string(),
            seed: config.search.seed,
            run: summary.run,
            population: summary.population,
            generations: summary.max_fitness.len() - 1,
            feasible: summary.feasible,
            controlled: summary.controlled,
            unique: summary.unique,
            initial_max_fitness: summary.max_fitness[0],
            final_max_fitness: *summary.max_fitness.last().unwrap(),
            relative_increase: summary.relative_increase(),
        }
    }
}

struct Run {
    log: Vec<GenerationRecord>,
    population: Vec<PopulationEntry>,
    llm: Option<pcgbench_llm::LlmBatch>,
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn write_lines<T: Serialize>(path: &Path, items: &[T]) -> Result<(), CliError> {
    let mut out = create(path)?;
    for item in items {
        serde_json::to_writer(&mut out, item).map_err(|e| CliError::io(path, e.into()))?;
        out.write_all(b"\n").map_err(|e| CliError::io(path, e))?;
    }
    out.flush().map_err(|e| CliError::io(path, e))
}

fn make_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

/// Runs every configured run and writes the output tree. `progress` sees each
/// run as it finishes. The llm endpoint is used exactly as configured.
pub fn run_experiment(
    config: &ExperimentConfig,
    progress: &mut dyn FnMut(&RunSummary),
) -> Result<Vec<RunSummary>, CliError> {
    let problem = config.validate()?;
    let out = config.output.clone();
    for dir in [out.clone(), out.join("logs"), out.join("populations")] {
        make_dir(&dir)?;
    }
    if config.generator == GeneratorKind::Llm {
        make_dir(&out.join("llm"))?;
    }
    let snapshot = out.join("config.toml");
    fs::write(&snapshot, config.to_toml()).map_err(|e| CliError::io(&snapshot, e))?;

    let mut summaries = Vec::with_capacity(config.search.runs);
    for r in 0..config.search.runs {
        let run = execute(config, problem.as_ref(), r)?;
        let name = format!("run_{r:03}");
        write_lines(&out.join("logs").join(format!("{name}.jsonl")), &run.log)?;
        write_lines(&out.join("populations").join(format!("{name}.jsonl")), &run.population)?;
        if let Some(batch) = &run.llm {
            let path = out.join("llm").join(format!("{name}.json"));
            let text = serde_json::to_string_pretty(batch).expect("batches serialize");
            fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
        }
        let summary = RunSummary::from_log(r, run.population.len(), &run.log);
        progress(&summary);
        summaries.push(summary);
    }
    write_summary(&out.join("summary.csv"), config, &summaries)?;
    Ok(summaries)
}

pub fn write_summary(path: &Path, config: &ExperimentConfig, summaries: &[RunSummary]) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e.into()))?;
    for summary in summaries {
        writer.serialize(SummaryRow::new(config, summary)).map_err(|e| CliError::io(path, e.into()))?;
    }
    writer.flush().map_err(|e| CliError::io(path, e))
}

fn execute(config: &ExperimentConfig, problem: &dyn ProblemContract, r: usize) -> Result<Run, CliError> {
    let mut rng = rng_for_run(config.search.seed, r);
    if let Some(kind) = config.generator.search_kind() {
        let result = run_search(problem, kind, config.fitness, &config.search, r, &mut rng);
        let population = result.population.iter().map(PopulationEntry::from).collect();
        return Ok(Run { log: result.log, population, llm: None });
    }
    let (pairs, llm) = if config.generator == GeneratorKind::Constructive {
        (constructive_batch(problem, config.search.population_size, &mut rng)?, None)
    } else {
        let endpoint = config.llm.clone().unwrap_or_default();
        let in_flight = endpoint.in_flight;
        let client = HttpCompletion::new(endpoint)?;
        let template = PromptTemplate::bundled(problem)?;
        let batch =
            run_llm_generator(problem, &template, &client, config.search.population_size, in_flight, &mut rng)?;
        let (contents, controls) = batch.parsed();
        (contents.into_iter().zip(controls).collect(), Some(batch))
    };
    let (log, population) = score_batch(config, problem, r, pairs)?;
    Ok(Run { log, population, llm })
}

/// A one-shot batch scored as a single generation.
fn score_batch(
    config: &ExperimentConfig,
    problem: &dyn ProblemContract,
    run: usize,
    pairs: Vec<(Value, Value)>,
) -> Result<(Vec<GenerationRecord>, Vec<PopulationEntry>), CliError> {
    let mut record = GenerationRecord {
        run,
        generation: 0,
        max_fitness: 0.0,
        mean_fitness: 0.0,
        feasible: 0,
        controlled: 0,
        unique: 0,
    };
    if pairs.is_empty() {
        return Ok((vec![record], Vec::new()));
    }
    let (contents, controls): (Vec<Value>, Vec<Value>) = pairs.into_iter().unzip();
    let report = evaluate(problem, &contents, Some(&controls))?;
    let mut population: Vec<PopulationEntry> = contents
        .into_iter()
        .zip(controls)
        .zip(&report.artifacts)
        .map(|((content, control), a)| PopulationEntry {
            content,
            control,
            quality: a.quality,
            controllability: a.controllability,
            diversity: a.diversity,
            fitness: config.fitness.score(a.quality, a.controllability, a.diversity),
        })
        .collect();
    // Stable sort keeps generation order among equal fitness.
    population.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));
    record.max_fitness = population[0].fitness;
    record.mean_fitness = population.iter().map(|p| p.fitness).sum::<f64>() / population.len() as f64;
    record.feasible = report.artifacts.iter().filter(|a| a.feasible()).count();
    record.controlled = report.artifacts.iter().filter(|a| a.controlled()).count();
    record.unique = report.artifacts.iter().filter(|a| a.unique()).count();
    Ok((vec![record], population))
}

/// Reads a `summary.csv`, checking its header against [`SUMMARY_COLUMNS`].
pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::io(path, e.into()))?;
    let headers = reader.headers().map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    if !headers.iter().eq(SUMMARY_COLUMNS) {
        return Err(CliError::Invalid(format!(
            "{}: unexpected columns {:?}; expected {:?}",
            path.display(),
            headers.iter().collect::<Vec<_>>(),
            SUMMARY_COLUMNS
        )));
    }
    reader
        .deserialize()
        .collect::<Result<Vec<SummaryRow>, _>>()
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn summary_path(output: &Path) -> PathBuf {
    output.join("summary.csv")
}
