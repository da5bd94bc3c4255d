use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eval::set_diversity;
use crate::info::InfoRecord;
use crate::problem::ProblemContract;
use crate::space::Value;

use super::config::SearchConfig;
use super::fitness::FitnessKind;

/// A paired content and control value with its cached scores.
///
/// The control is fixed when the chromosome is first sampled; variation only
/// touches content.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub content: Value,
    pub control: Value,
    pub info: Arc<InfoRecord>,
    pub quality: f64,
    pub controllability: f64,
    /// Diversity against the population it was last scored in (kept up to date under QTD only).
    pub diversity: f64,
    pub fitness: f64,
    /// Creation order within the run; lower is older.
    pub serial: u64,
}

impl Chromosome {
    pub fn feasible(&self) -> bool {
        self.quality >= 1.0
    }

    pub fn controlled(&self) -> bool {
        self.controllability >= 1.0
    }
}

/// One line of a run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub run: usize,
    pub generation: usize,
    pub max_fitness: f64,
    pub mean_fitness: f64,
    pub feasible: usize,
    pub controlled: usize,
    pub unique: usize,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// The initial population (generation 0) followed by one record per generation.
    pub log: Vec<GenerationRecord>,
    /// Final population, best first.
    pub population: Vec<Chromosome>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Random,
    Es,
    Ga,
}

impl SearchKind {
    pub const ALL: [SearchKind; 3] = [SearchKind::Random, SearchKind::Es, SearchKind::Ga];
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchKind::Random => "random",
            SearchKind::Es => "es",
            SearchKind::Ga => "ga",
        })
    }
}

impl FromStr for SearchKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(SearchKind::Random),
            "es" => Ok(SearchKind::Es),
            "ga" => Ok(SearchKind::Ga),
            other => Err(format!("unknown generator `{other}` (expected random, es or ga)")),
        }
    }
}

/// Better first: higher fitness, then older.
fn rank(a: &Chromosome, b: &Chromosome) -> Ordering {
    b.fitness.total_cmp(&a.fitness).then(a.serial.cmp(&b.serial))
}

/// Cached info records per run before the cache is emptied.
const INFO_CACHE_LIMIT: usize = 200_000;

struct Search<'a, R> {
    problem: &'a dyn ProblemContract,
    fitness: FitnessKind,
    config: &'a SearchConfig,
    rng: &'a mut R,
    next_serial: u64,
    cache: HashMap<Value, Arc<InfoRecord>>,
}

impl<R: Rng> Search<'_, R> {
    fn serial(&mut self) -> u64 {
        self.next_serial += 1;
        self.next_serial - 1
    }

    /// Scores new (content, control) pairs in order. Info for contents not
    /// seen earlier in the run is computed in parallel and cached.
    fn score(&mut self, pairs: Vec<(Value, Value)>) -> Vec<Chromosome> {
        let problem = self.problem;
        let mut missing: Vec<&Value> = pairs.iter().map(|(c, _)| c).filter(|c| !self.cache.contains_key(*c)).collect();
        missing.sort_unstable();
        missing.dedup();
        let computed: Vec<Arc<InfoRecord>> = missing.par_iter().map(|c| Arc::new(problem.info(c))).collect();
        if self.cache.len() + computed.len() > INFO_CACHE_LIMIT {
            self.cache.clear();
        }
        for (content, info) in missing.into_iter().zip(computed) {
            self.cache.insert(content.clone(), info);
        }
        pairs
            .into_iter()
            .map(|(content, control)| {
                let info = Arc::clone(&self.cache[&content]);
                let quality = problem.quality(&info);
                let controllability = problem.controllability(&info, &control);
                Chromosome {
                    content,
                    control,
                    info,
                    quality,
                    controllability,
                    diversity: 0.0,
                    fitness: 0.0,
                    serial: self.serial(),
                }
            })
            .collect()
    }

    fn fresh(&mut self, n: usize) -> Vec<Chromosome> {
        let pairs = (0..n)
            .map(|_| {
                let content = self.problem.content_space().sample(self.rng);
                let control = self.problem.control_space().sample(self.rng);
                (content, control)
            })
            .collect();
        self.score(pairs)
    }

    /// Refreshes diversity and fitness against `pool`; diversity only feeds
    /// fitness under QTD, so other objectives skip the pairwise pass.
    fn refit(&self, pool: &mut [Chromosome]) {
        if self.fitness.uses_diversity() {
            let infos: Vec<&InfoRecord> = pool.iter().map(|c| c.info.as_ref()).collect();
            let d = set_diversity(self.problem, &infos);
            for (c, d) in pool.iter_mut().zip(d) {
                c.diversity = d;
            }
        }
        for c in pool.iter_mut() {
            c.fitness = self.fitness.score(c.quality, c.controllability, c.diversity);
        }
    }

    fn truncate(&self, mut pool: Vec<Chromosome>) -> Vec<Chromosome> {
        self.refit(&mut pool);
        pool.sort_by(rank);
        pool.truncate(self.config.population_size);
        pool
    }

    fn tournament<'p>(&mut self, population: &'p [Chromosome]) -> &'p Chromosome {
        let mut best = &population[self.rng.random_range(0..population.len())];
        for _ in 1..self.config.tournament_size {
            let c = &population[self.rng.random_range(0..population.len())];
            if rank(c, best) == Ordering::Less {
                best = c;
            }
        }
        best
    }

    fn next_generation(&mut self, kind: SearchKind, population: Vec<Chromosome>) -> Vec<Chromosome> {
        let n = self.config.population_size;
        let space = self.problem.content_space();
        match kind {
            SearchKind::Random => {
                let mut pool = population;
                pool.extend(self.fresh(n));
                self.truncate(pool)
            }
            SearchKind::Es => {
                let pairs = (0..n)
                    .map(|_| {
                        let parent = &population[self.rng.random_range(0..population.len())];
                        let content = space.mutate(&parent.content, self.config.mutation_rate, self.rng);
                        (content, parent.control.clone())
                    })
                    .collect();
                let mut pool = population;
                pool.extend(self.score(pairs));
                self.truncate(pool)
            }
            SearchKind::Ga => {
                let elites = self.config.elitism.min(population.len());
                let pairs = (elites..n)
                    .map(|_| {
                        let a = self.tournament(&population);
                        let b = self.tournament(&population);
                        let child = if self.rng.random_bool(self.config.crossover_rate) {
                            space.mix(&a.content, &b.content, self.rng)
                        } else {
                            a.content.clone()
                        };
                        let content = space.mutate(&child, self.config.mutation_rate, self.rng);
                        (content, a.control.clone())
                    })
                    .collect();
                let mut next: Vec<Chromosome> = population[..elites].to_vec();
                next.extend(self.score(pairs));
                self.refit(&mut next);
                next.sort_by(rank);
                next
            }
        }
    }

    fn record(&self, run: usize, generation: usize, population: &[Chromosome]) -> GenerationRecord {
        let infos: Vec<&InfoRecord> = population.iter().map(|c| c.info.as_ref()).collect();
        let unique = set_diversity(self.problem, &infos).iter().filter(|&&d| d >= 1.0).count();
        GenerationRecord {
            run,
            generation,
            max_fitness: population.iter().map(|c| c.fitness).fold(f64::NEG_INFINITY, f64::max),
            mean_fitness: population.iter().map(|c| c.fitness).sum::<f64>() / population.len() as f64,
            feasible: population.iter().filter(|c| c.feasible()).count(),
            controlled: population.iter().filter(|c| c.controlled()).count(),
            unique,
        }
    }
}

/// Runs one search, calling `observe(generation, population)` after the
/// initial population and after every generation.
///
/// # Panics
/// If `config` fails [`SearchConfig::validate`].
pub fn run_search_observed<R: Rng>(
    problem: &dyn ProblemContract,
    kind: SearchKind,
    fitness: FitnessKind,
    config: &SearchConfig,
    run: usize,
    rng: &mut R,
    observe: &mut dyn FnMut(usize, &[Chromosome]),
) -> RunResult {
    if let Err(e) = config.validate() {
        panic!("invalid search configuration: {e}");
    }
    let mut search = Search { problem, fitness, config, rng, next_serial: 0, cache: HashMap::new() };
    let initial = search.fresh(config.population_size);
    let mut population = search.truncate(initial);
    let mut log = vec![search.record(run, 0, &population)];
    observe(0, &population);
    for generation in 1..=config.generations {
        population = search.next_generation(kind, population);
        log.push(search.record(run, generation, &population));
        observe(generation, &population);
    }
    RunResult { log, population }
}

pub fn run_search<R: Rng>(
    problem: &dyn ProblemContract,
    kind: SearchKind,
    fitness: FitnessKind,
    config: &SearchConfig,
    run: usize,
    rng: &mut R,
) -> RunResult {
    run_search_observed(problem, kind, fitness, config, run, rng, &mut |_, _| {})
}

pub fn run_random<R: Rng>(problem: &dyn ProblemContract, fitness: FitnessKind, config: &SearchConfig, rng: &mut R) -> RunResult {
    run_search(problem, SearchKind::Random, fitness, config, 0, rng)
}

pub fn run_es<R: Rng>(problem: &dyn ProblemContract, fitness: FitnessKind, config: &SearchConfig, rng: &mut R) -> RunResult {
    run_search(problem, SearchKind::Es, fitness, config, 0, rng)
}

pub fn run_ga<R: Rng>(problem: &dyn ProblemContract, fitness: FitnessKind, config: &SearchConfig, rng: &mut R) -> RunResult {
    run_search(problem, SearchKind::Ga, fitness, config, 0, rng)
}
