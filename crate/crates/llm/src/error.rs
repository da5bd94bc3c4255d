use thiserror::Error;

#[derive(Debug, Error)]
pub enum LlmError {
    #[error("no prompt template for problem `{0}` (supported: binary-v0, sokoban-v0, zelda-v0)")]
    UnsupportedProblem(String),
    #[error("template is for `{template}` but the problem is `{problem}`")]
    TemplateMismatch { template: String, problem: String },
    #[error("bundled examples for `{problem}` are malformed: {reason}")]
    Examples { problem: String, reason: String },
    #[error("invalid endpoint configuration: {0}")]
    Config(String),
    #[error("request failed: {0}")]
    Transport(String),
    #[error("endpoint answered with HTTP status {0}")]
    Status(u16),
    #[error("endpoint reply is not a JSON object with a `text` field: {0}")]
    BadReply(String),
}

/// Why a model reply could not be turned into content.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no fenced grid in the reply")]
    NoGrid,
    #[error("unknown symbol {symbol:?} at row {row}, column {column}")]
    UnknownSymbol { symbol: char, row: usize, column: usize },
    #[error("expected {expected_rows} rows of {expected_width} symbols, found rows of widths {found:?}")]
    Shape { expected_width: usize, expected_rows: usize, found: Vec<usize> },
}
