//! Few-shot text-completion generator adapter.
//!
//! Builds a prompt from a problem's rules and five bundled example levels,
//! sends it to a completion endpoint, and parses the fenced grid in each reply
//! back into content that the core evaluator can score.

pub mod endpoint;
pub mod error;
pub mod generator;
pub mod mock;
pub mod parse;
pub mod template;

pub use endpoint::{Completion, CompletionRequest, EndpointConfig, HttpCompletion, URL_ENV};
pub use error::{LlmError, ParseError};
pub use generator::{run_llm_generator, LlmBatch, LlmItem, LlmStats};
pub use mock::{MockReply, MockServer};
pub use parse::parse_response;
pub use template::{build_prompt, Legend, PromptTemplate, EXAMPLE_COUNT, SUPPORTED};
