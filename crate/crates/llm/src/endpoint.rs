//! Text-completion endpoints.
//!
//! Wire format: `POST {url}` with a JSON body
//! `{"model", "prompt", "temperature", "max_tokens", "seed"}`; the reply is a
//! JSON object whose `text` field holds the completion. Plain HTTP only.

use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use ureq::Agent;

use crate::error::LlmError;

/// Environment variable that overrides [`EndpointConfig::url`].
pub const URL_ENV: &str = "PCGBENCH_LLM_URL";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EndpointConfig {
    pub url: String,
    pub model: String,
    pub timeout_secs: f64,
    /// Extra attempts after the first for transport errors, 429 and 5xx.
    pub max_retries: u32,
    /// Wait before the first retry; doubled on every further retry.
    pub retry_backoff_ms: u64,
    pub temperature: f64,
    pub max_tokens: u32,
    /// Requests sent concurrently.
    pub in_flight: usize,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        Self {
            url: "http://127.0.0.1:8080/v1/completions".into(),
            model: "default".into(),
            timeout_secs: 60.0,
            max_retries: 2,
            retry_backoff_ms: 250,
            temperature: 0.7,
            max_tokens: 512,
            in_flight: 4,
        }
    }
}

impl EndpointConfig {
    /// Applies the [`URL_ENV`] override when the variable is set and non-empty.
    pub fn with_env(mut self) -> Self {
        if let Ok(url) = std::env::var(URL_ENV) {
            if !url.trim().is_empty() {
                self.url = url.trim().to_string();
            }
        }
        self
    }

    pub fn validate(&self) -> Result<(), LlmError> {
        if !self.url.starts_with("http://") {
            return Err(LlmError::Config(format!("url must start with http:// (got `{}`)", self.url)));
        }
        if !(self.timeout_secs.is_finite() && self.timeout_secs > 0.0) {
            return Err(LlmError::Config("timeout_secs must be positive".into()));
        }
        if !(0.0..=2.0).contains(&self.temperature) {
            return Err(LlmError::Config("temperature must lie in [0, 2]".into()));
        }
        if self.in_flight == 0 {
            return Err(LlmError::Config("in_flight must be at least 1".into()));
        }
        if self.max_tokens == 0 {
            return Err(LlmError::Config("max_tokens must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub prompt: String,
    pub seed: u64,
}

/// Anything that turns a prompt into completion text.
pub trait Completion: Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError>;

    /// Attempts made so far, counting retries.
    fn attempts(&self) -> usize {
        0
    }
}

#[derive(Serialize)]
struct WireRequest<'a> {
    model: &'a str,
    prompt: &'a str,
    temperature: f64,
    max_tokens: u32,
    seed: u64,
}

#[derive(Deserialize)]
struct WireReply {
    text: String,
}

pub struct HttpCompletion {
    config: EndpointConfig,
    agent: Agent,
    attempts: std::sync::atomic::AtomicUsize,
}

impl HttpCompletion {
    pub fn new(config: EndpointConfig) -> Result<Self, LlmError> {
        config.validate()?;
        let agent = Agent::config_builder()
            .timeout_global(Some(Duration::from_secs_f64(config.timeout_secs)))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(Self { config, agent, attempts: 0.into() })
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }

    fn attempt(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        self.attempts.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let body = WireRequest {
            model: &self.config.model,
            prompt: &request.prompt,
            temperature: self.config.temperature,
            max_tokens: self.config.max_tokens,
            seed: request.seed,
        };
        let mut response =
            self.agent.post(&self.config.url).send_json(&body).map_err(|e| LlmError::Transport(e.to_string()))?;
        let status = response.status().as_u16();
        if status != 200 {
            return Err(LlmError::Status(status));
        }
        let raw = response.body_mut().read_to_string().map_err(|e| LlmError::Transport(e.to_string()))?;
        serde_json::from_str::<WireReply>(&raw).map(|r| r.text).map_err(|e| LlmError::BadReply(e.to_string()))
    }
}

fn retryable(error: &LlmError) -> bool {
    match error {
        LlmError::Transport(_) => true,
        LlmError::Status(code) => *code == 429 || *code >= 500,
        _ => false,
    }
}

impl Completion for HttpCompletion {
    fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        let mut backoff = Duration::from_millis(self.config.retry_backoff_ms);
        let mut retries = 0;
        loop {
            match self.attempt(request) {
                Err(e) if retryable(&e) && retries < self.config.max_retries => {
                    retries += 1;
                    thread::sleep(backoff);
                    backoff *= 2;
                }
                other => return other,
            }
        }
    }

    fn attempts(&self) -> usize {
        self.attempts.load(std::sync::atomic::Ordering::Relaxed)
    }
}
