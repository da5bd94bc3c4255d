//! Evolves Binary mazes with the elitist ES and prints the best one.
//!
//! `cargo run --release -p pcgbench-core --example evolve -- [generations]`

use pcgbench_core::generators::{rng_for_run, run_search, FitnessKind, SearchConfig, SearchKind};
use pcgbench_core::make_default;

fn main() {
    let generations = std::env::args().nth(1).and_then(|g| g.parse().ok()).unwrap_or(50);
    let problem = make_default("binary-v0").expect("binary is registered");
    let config = SearchConfig { generations, ..SearchConfig::default() };
    let result = run_search(problem.as_ref(), SearchKind::Es, FitnessKind::Q, &config, 0, &mut rng_for_run(1, 0));

    for record in result.log.iter().step_by(10) {
        println!("gen {:>4}  max {:.3}  feasible {:>3}", record.generation, record.max_fitness, record.feasible);
    }
    let best = &result.population[0];
    println!("best quality {:.3}, diameter {}", best.quality, best.info.int("diameter"));
    let tiles = problem.content_space().flatten(&best.content).expect("content is in its space");
    for row in tiles.chunks(14) {
        println!("{}", row.iter().map(|&t| if t == 1 { '#' } else { '.' }).collect::<String>());
    }
}
