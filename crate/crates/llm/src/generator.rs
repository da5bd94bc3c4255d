use std::thread;

use pcgbench_core::{ProblemContract, Value};
use rand::Rng;
use serde::Serialize;

use crate::endpoint::{Completion, CompletionRequest};
use crate::error::LlmError;
use crate::parse::parse_response;
use crate::template::{build_prompt, PromptTemplate};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LlmItem {
    pub index: usize,
    pub control: Value,
    pub reply: Option<String>,
    pub content: Option<Value>,
    /// Index of the prompt example this content copies.
    pub duplicate_of: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LlmStats {
    pub requests: usize,
    pub attempts: usize,
    pub parsed: usize,
    pub failed: usize,
    pub duplicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LlmBatch {
    pub items: Vec<LlmItem>,
    pub stats: LlmStats,
}

impl LlmBatch {
    /// Parsed contents with their controls, in request order.
    pub fn parsed(&self) -> (Vec<Value>, Vec<Value>) {
        self.items.iter().filter_map(|i| Some((i.content.clone()?, i.control.clone()))).unzip()
    }
}

/// Requests `count` levels, `in_flight` at a time.
///
/// Controls and request seeds are drawn from `rng` in index order before any
/// request is sent, so the batch does not depend on reply timing.
pub fn run_llm_generator<R: Rng + ?Sized>(
    problem: &dyn ProblemContract,
    template: &PromptTemplate,
    client: &dyn Completion,
    count: usize,
    in_flight: usize,
    rng: &mut R,
) -> Result<LlmBatch, LlmError> {
    let prompt = build_prompt(problem, template)?;
    let plan: Vec<(Value, u64)> = (0..count).map(|_| (problem.control_space().sample(rng), rng.random())).collect();
    let attempts_before = client.attempts();

    let mut replies: Vec<Result<String, LlmError>> = Vec::with_capacity(count);
    for chunk in plan.chunks(in_flight.max(1)) {
        thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|(_, seed)| {
                    let request = CompletionRequest { prompt: prompt.clone(), seed: *seed };
                    scope.spawn(move || client.complete(&request))
                })
                .collect();
            for handle in handles {
                replies.push(handle.join().unwrap_or_else(|_| Err(LlmError::Transport("worker panicked".into()))));
            }
        });
    }

    let mut stats = LlmStats { requests: count, ..LlmStats::default() };
    let items = plan
        .into_iter()
        .zip(replies)
        .enumerate()
        .map(|(index, ((control, _), reply))| {
            let mut item = LlmItem { index, control, reply: None, content: None, duplicate_of: None, error: None };
            match reply {
                Err(e) => item.error = Some(e.to_string()),
                Ok(text) => {
                    match parse_response(problem, template, &text) {
                        Ok(content) => {
                            item.duplicate_of = template.duplicate_of(&content);
                            item.content = Some(content);
                        }
                        Err(e) => item.error = Some(e.to_string()),
                    }
                    item.reply = Some(text);
                }
            }
            if item.content.is_some() {
                stats.parsed += 1;
            } else {
                stats.failed += 1;
            }
            stats.duplicates += usize::from(item.duplicate_of.is_some());
            item
        })
        .collect();
    stats.attempts = client.attempts() - attempts_before;
    Ok(LlmBatch { items, stats })
}
