use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcgbench_core::generators::FitnessKind;
use pcgbench_core::{evaluate, make, Overrides, ParamValue};
use pcgbench_cli::compare::{compare_files, to_csv};
use pcgbench_cli::render::{load_values, render_all};
use pcgbench_cli::{list_table, run_experiment, CliError, ExperimentConfig, GeneratorKind};

/// Content generation benchmark.
///
/// Exit codes: 0 success, 1 runtime or I/O failure, 2 invalid arguments or input.
#[derive(Parser)]
#[command(name = "pcgbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List problems, their default variants and reserved names.
    List,
    /// Score a JSON array of contents and print the report.
    Eval {
        #[arg(long)]
        problem: String,
        content: PathBuf,
        /// JSON array of controls, one per content.
        #[arg(long)]
        controls: Option<PathBuf>,
        /// Variant override, repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run an experiment and write logs, populations and a summary CSV.
    Run {
        /// TOML experiment file; flags override its values.
        config: Option<PathBuf>,
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        generator: Option<GeneratorKind>,
        #[arg(long)]
        fitness: Option<FitnessKind>,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long)]
        pop: Option<usize>,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Completion endpoint for the llm generator (overrides the environment).
        #[arg(long)]
        llm_url: Option<String>,
    },
    /// Render each content of a JSON array to PNG and/or text files.
    Render {
        #[arg(long)]
        problem: String,
        content: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Mean and 95% interval of the counts per configuration across summary CSVs.
    Compare {
        #[arg(required = true)]
        summaries: Vec<PathBuf>,
    },
}

fn overrides(pairs: &[String]) -> Result<Overrides, CliError> {
    let mut out = Overrides::new();
    for pair in pairs {
        let (key, value) =
            pair.split_once('=').ok_or_else(|| CliError::Invalid(format!("--set expects KEY=VALUE, got `{pair}`")))?;
        let value: ParamValue = value.parse().map_err(CliError::Invalid)?;
        out.insert(key.trim().to_string(), value);
    }
    Ok(out)
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::List => print!("{}", list_table()),
        Command::Eval { problem, content, controls, set } => {
            let problem = make(&problem, &overrides(&set)?)?;
            let contents = load_values(&content)?;
            let controls = controls.map(|p| load_values(&p)).transpose()?;
            let report = evaluate(problem.as_ref(), &contents, controls.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        }
        Command::Run { config, problem, generator, fitness, gens, pop, runs, seed, out, set, llm_url } => {
            let mut cfg = match (config, &problem) {
                (Some(path), _) => ExperimentConfig::load(&path)?,
                (None, Some(name)) => ExperimentConfig::new(name, GeneratorKind::Ga, FitnessKind::Q),
                (None, None) => return Err(CliError::Invalid("run needs a config file or --problem".into())),
            };
            if let Some(problem) = problem {
                cfg.problem = problem;
            }
            cfg.generator = generator.unwrap_or(cfg.generator);
            cfg.fitness = fitness.unwrap_or(cfg.fitness);
            cfg.search.generations = gens.unwrap_or(cfg.search.generations);
            cfg.search.population_size = pop.unwrap_or(cfg.search.population_size);
            cfg.search.runs = runs.unwrap_or(cfg.search.runs);
            cfg.search.seed = seed.unwrap_or(cfg.search.seed);
            cfg.output = out.unwrap_or(cfg.output);
            cfg.variant.extend(overrides(&set)?);
            if cfg.generator == GeneratorKind::Llm {
                let mut llm = cfg.llm.take().unwrap_or_default().with_env();
                if let Some(url) = llm_url {
                    llm.url = url;
                }
                cfg.llm = Some(llm);
            }
            let runs = cfg.search.runs;
            run_experiment(&cfg, &mut |s| {
                eprintln!(
                    "run {}/{runs}: feasible {} controlled {} unique {} of {}",
                    s.run + 1,
                    s.feasible,
                    s.controlled,
                    s.unique,
                    s.population
                );
            })?;
            println!("{}", cfg.output.join("summary.csv").display());
        }
        Command::Render { problem, content, out, set } => {
            let problem = make(&problem, &overrides(&set)?)?;
            for path in render_all(problem.as_ref(), &load_values(&content)?, &out)? {
                println!("{}", path.display());
            }
        }
        Command::Compare { summaries } => print!("{}", to_csv(&compare_files(&summaries)?)),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
