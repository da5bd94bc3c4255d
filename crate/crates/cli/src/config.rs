//! Experiment configuration files.
//!
//! ```toml
//! problem = "binary-v0"
//! generator = "ga"
//! fitness = "q"
//! output = "out/binary-ga-q"
//!
//! [variant]
//! path_target = 28
//!
//! [search]
//! generations = 200
//! runs = 10
//! seed = 0
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pcgbench_core::generators::{FitnessKind, SearchConfig, SearchKind, CONSTRUCTIVE_PROBLEMS};
use pcgbench_core::{make, Overrides, ProblemContract};
use pcgbench_llm::EndpointConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Random,
    Es,
    Ga,
    Constructive,
    Llm,
}

impl GeneratorKind {
    pub fn search_kind(self) -> Option<SearchKind> {
        match self {
            GeneratorKind::Random => Some(SearchKind::Random),
            GeneratorKind::Es => Some(SearchKind::Es),
            GeneratorKind::Ga => Some(SearchKind::Ga),
            GeneratorKind::Constructive | GeneratorKind::Llm => None,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.search_kind() {
            Some(kind) => kind.fmt(f),
            None if *self == GeneratorKind::Constructive => f.write_str("constructive"),
            None => f.write_str("llm"),
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(GeneratorKind::Random),
            "es" => Ok(GeneratorKind::Es),
            "ga" => Ok(GeneratorKind::Ga),
            "constructive" => Ok(GeneratorKind::Constructive),
            "llm" => Ok(GeneratorKind::Llm),
            other => Err(format!("unknown generator `{other}` (expected random, es, ga, constructive or llm)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: String,
    pub generator: GeneratorKind,
    #[serde(default = "default_fitness")]
    pub fitness: FitnessKind,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub variant: Overrides,
    #[serde(default)]
    pub search: SearchConfig,
    /// Endpoint settings, used only by the `llm` generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub llm: Option<EndpointConfig>,
}

fn default_fitness() -> FitnessKind {
    FitnessKind::Q
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn new(problem: &str, generator: GeneratorKind, fitness: FitnessKind) -> Self {
        Self {
            problem: problem.to_string(),
            generator,
            fitness,
            output: default_output(),
            variant: Overrides::new(),
            search: SearchConfig::default(),
            llm: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment configs always serialize")
    }

    /// Builds the problem and checks that every setting is usable with it.
    pub fn validate(&self) -> Result<std::sync::Arc<dyn ProblemContract>, CliError> {
        let problem = make(&self.problem, &self.variant)?;
        if self.generator.search_kind().is_some() {
            self.search.validate().map_err(CliError::Invalid)?;
        } else if self.search.population_size == 0 {
            return Err(CliError::Invalid("population_size must be positive".into()));
        }
        if self.search.runs == 0 {
            return Err(CliError::Invalid("runs must be at least 1".into()));
        }
        match self.generator {
            GeneratorKind::Constructive if !CONSTRUCTIVE_PROBLEMS.contains(&self.problem.as_str()) => {
                return Err(CliError::Invalid(format!(
                    "the constructive generator supports {} only",
                    CONSTRUCTIVE_PROBLEMS.join(", ")
                )));
            }
            GeneratorKind::Llm => {
                self.llm.clone().unwrap_or_default().validate()?;
                pcgbench_llm::PromptTemplate::bundled(problem.as_ref())?;
            }
            _ => {}
        }
        Ok(problem)
    }
}
