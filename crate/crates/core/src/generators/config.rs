use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Hyperparameters shared by the search generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub population_size: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub crossover_rate: f64,
    pub tournament_size: usize,
    pub elitism: usize,
    pub runs: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 200,
            mutation_rate: 0.05,
            crossover_rate: 0.5,
            tournament_size: 7,
            elitism: 10,
            runs: 10,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.population_size == 0 {
            return Err("population_size must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(format!("mutation_rate {} is outside [0, 1]", self.mutation_rate));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(format!("crossover_rate {} is outside [0, 1]", self.crossover_rate));
        }
        if self.tournament_size == 0 {
            return Err("tournament_size must be positive".into());
        }
        if self.elitism > self.population_size {
            return Err(format!("elitism {} exceeds population_size {}", self.elitism, self.population_size));
        }
        Ok(())
    }
}

/// Independent random stream for one run of an experiment.
pub fn rng_for_run(seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run as u64);
    rng
}
