use thiserror::Error;

/// Errors raised by space operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("malformed space descriptor: {0}")]
    Malformed(String),
    #[error("expected {expected} leaves, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("leaf {leaf} holds {value}, outside [{lo}, {hi}]")]
    LeafOutOfRange { leaf: usize, value: i64, lo: i64, hi: i64 },
    #[error("value does not match the descriptor structure at leaf {leaf}: {reason}")]
    Structure { leaf: usize, reason: String },
}

/// Errors raised by the registry and the evaluation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("unknown problem `{name}`; registered problems: {}", registered.join(", "))]
    UnknownProblem { name: String, registered: Vec<String> },
    #[error("problem `{0}` is reserved and not implemented")]
    ReservedProblem(String),
    #[error("problem `{problem}` has no variant parameter `{key}`; known: {}", known.join(", "))]
    UnknownOverride { problem: String, key: String, known: Vec<String> },
    #[error("invalid value for variant parameter `{key}`: {reason}")]
    InvalidOverride { key: String, reason: String },
    #[error("empty batch")]
    EmptyBatch,
    #[error("content {index} is not in the content space: {reason}")]
    InvalidContent { index: usize, reason: String },
    #[error("control {index} is not in the control space: {reason}")]
    InvalidControl { index: usize, reason: String },
    #[error("{contents} contents but {controls} controls")]
    ControlCountMismatch { contents: usize, controls: usize },
    #[error("generator does not support problem `{0}`")]
    UnsupportedProblem(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Precondition violations reported by the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("map has no passable cell")]
    NoPassableCell,
    #[error("expected exactly one player, found {0}")]
    PlayerCount(usize),
    #[error("{crates} crates but {targets} targets")]
    CrateTargetMismatch { crates: usize, targets: usize },
    #[error("level dimensions {width}x{height} do not match {cells} cells")]
    Dimensions { width: usize, height: usize, cells: usize },
    #[error("dictionary line {line}: {reason}")]
    Dictionary { line: usize, reason: String },
}
