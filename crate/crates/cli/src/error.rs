use std::path::PathBuf;

use pcgbench_core::CoreError;
use pcgbench_llm::LlmError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad configuration, input files or arguments.
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Llm(#[from] LlmError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for anything the user can fix in their input, 1 for runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Core(_) => 2,
            CliError::Llm(LlmError::Config(_) | LlmError::UnsupportedProblem(_)) => 2,
            CliError::Llm(_) | CliError::Io { .. } => 1,
        }
    }
}
