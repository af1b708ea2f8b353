//! OpenAI-compatible completions client.
//!
//! Scoring sends the concatenated prompt+continuation with `max_tokens: 0`,
//! `echo: true`, and `logprobs` requested, then recovers the continuation's
//! token log-probabilities from the returned per-token fields. The
//! context/continuation boundary is validated client-side against the
//! server's `text_offset` bookkeeping: a token must start exactly at the
//! boundary, otherwise the tokenizer merged the continuation's leading space
//! into the context and the request fails loudly rather than mis-scoring.
//!
//! Token counting for window enforcement uses the sibling `/tokenize` route
//! exposed by common inference servers; without one, window checks are
//! reported unavailable.

use std::time::Duration;

use serde::Deserialize;

use crate::backend::{BackendDescriptor, BackendIdentity, RawScore, RetryPolicy, ScoringBackend};
use crate::error::{Error, Result};
use crate::render::ScoreRequest;

/// Environment variable holding the bearer token for the endpoint, if any.
pub const API_KEY_ENV: &str = "MCEVAL_API_KEY";

pub struct HttpBackend {
    client: reqwest::blocking::Client,
    completions_url: String,
    tokenize_url: String,
    identity: BackendIdentity,
    retry: RetryPolicy,
    api_key: Option<String>,
}

#[derive(Debug, Deserialize)]
struct CompletionsResponse {
    choices: Vec<CompletionChoice>,
}

#[derive(Debug, Deserialize)]
struct CompletionChoice {
    logprobs: Option<LogprobsBlock>,
}

#[derive(Debug, Deserialize)]
struct LogprobsBlock {
    token_logprobs: Vec<Option<f64>>,
    text_offset: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct TokenizeResponse {
    count: Option<usize>,
    tokens: Option<Vec<serde_json::Value>>,
}

impl HttpBackend {
    pub fn from_descriptor(descriptor: &BackendDescriptor) -> Result<Self> {
        let endpoint = descriptor
            .endpoint
            .as_deref()
            .ok_or_else(|| Error::Backend("http backend requires an endpoint".into()))?
            .trim_end_matches('/')
            .to_owned();
        let completions_url = if endpoint.ends_with("/completions") {
            endpoint.clone()
        } else if endpoint.ends_with("/v1") {
            format!("{endpoint}/completions")
        } else {
            format!("{endpoint}/v1/completions")
        };
        let base = completions_url
            .trim_end_matches("/completions")
            .trim_end_matches("/v1")
            .to_owned();
        let tokenize_url = format!("{base}/tokenize");
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(120))
            .build()
            .map_err(|e| Error::Backend(format!("http client: {e}")))?;
        Ok(HttpBackend {
            client,
            completions_url,
            tokenize_url,
            identity: BackendIdentity {
                model_name: descriptor.model_name.clone(),
                add_bos: descriptor.add_bos,
            },
            retry: descriptor.retry,
            api_key: std::env::var(API_KEY_ENV).ok(),
        })
    }

    fn post(&self, url: &str, body: &serde_json::Value) -> Result<serde_json::Value> {
        let mut last_err = String::new();
        for attempt in 0..self.retry.max_attempts {
            if attempt > 0 {
                std::thread::sleep(self.retry.base_backoff * 2u32.pow(attempt - 1));
            }
            let mut builder = self.client.post(url).json(body);
            if let Some(key) = &self.api_key {
                builder = builder.bearer_auth(key);
            }
            match builder.send() {
                Ok(response) => {
                    let status = response.status();
                    if status.is_success() {
                        return response
                            .json()
                            .map_err(|e| Error::Backend(format!("{url}: bad json: {e}")));
                    }
                    let body = response.text().unwrap_or_default();
                    last_err = format!("{url}: status {status}: {body}");
                    if status.is_client_error() {
                        break;
                    }
                }
                Err(e) => last_err = format!("{url}: {e}"),
            }
        }
        Err(Error::Transport {
            attempts: self.retry.max_attempts,
            request_ids: String::new(),
            detail: last_err,
        })
    }
}

/// Recover the continuation's log-probabilities from echoed per-token fields.
///
/// `boundary` is the context length in characters; offsets are the server's
/// per-token start positions within the full prompt.
pub fn align_continuation(
    request_id: &str,
    boundary: usize,
    text_offset: &[usize],
    token_logprobs: &[Option<f64>],
) -> Result<RawScore> {
    if text_offset.len() != token_logprobs.len() {
        return Err(Error::Alignment {
            request_id: request_id.to_owned(),
            detail: format!(
                "offset/logprob length mismatch ({} vs {})",
                text_offset.len(),
                token_logprobs.len()
            ),
        });
    }
    let start = text_offset
        .iter()
        .position(|&off| off == boundary)
        .ok_or_else(|| Error::Alignment {
            request_id: request_id.to_owned(),
            detail: format!(
                "no token starts at the continuation boundary (char offset {boundary})"
            ),
        })?;
    let slice = &token_logprobs[start..];
    if slice.is_empty() {
        return Err(Error::Alignment {
            request_id: request_id.to_owned(),
            detail: "no tokens cover the continuation".into(),
        });
    }
    let mut sum = 0.0;
    for lp in slice {
        match lp {
            Some(v) => sum += v,
            None => {
                return Err(Error::Alignment {
                    request_id: request_id.to_owned(),
                    detail: "continuation token has no log-probability".into(),
                })
            }
        }
    }
    Ok(RawScore {
        logprob_sum: sum,
        token_count: slice.len(),
    })
}

impl ScoringBackend for HttpBackend {
    fn score_one(&self, request: &ScoreRequest) -> Result<RawScore> {
        let prompt = format!("{}{}", request.context, request.continuation);
        let mut body = serde_json::json!({
            "model": self.identity.model_name,
            "prompt": prompt,
            "max_tokens": 0,
            "echo": true,
            "logprobs": 0,
        });
        if self.identity.add_bos {
            body["add_bos_token"] = serde_json::Value::Bool(true);
        }
        let value = self.post(&self.completions_url, &body)?;
        let parsed: CompletionsResponse = serde_json::from_value(value)
            .map_err(|e| Error::Backend(format!("completions response: {e}")))?;
        let logprobs = parsed
            .choices
            .first()
            .and_then(|c| c.logprobs.as_ref())
            .ok_or_else(|| Error::Alignment {
                request_id: request.request_id.clone(),
                detail: "response carries no logprobs block".into(),
            })?;
        align_continuation(
            &request.request_id,
            request.context.chars().count(),
            &logprobs.text_offset,
            &logprobs.token_logprobs,
        )
    }

    fn count_tokens(&self, text: &str) -> Result<usize> {
        let body = serde_json::json!({
            "model": self.identity.model_name,
            "prompt": text,
            "content": text,
        });
        let value = self
            .post(&self.tokenize_url, &body)
            .map_err(|e| Error::WindowCheckUnavailable(e.to_string()))?;
        let parsed: TokenizeResponse = serde_json::from_value(value)
            .map_err(|e| Error::WindowCheckUnavailable(format!("tokenize response: {e}")))?;
        if let Some(count) = parsed.count {
            return Ok(count);
        }
        if let Some(tokens) = parsed.tokens {
            return Ok(tokens.len());
        }
        Err(Error::WindowCheckUnavailable(
            "tokenize response has neither count nor tokens".into(),
        ))
    }

    fn identity(&self) -> BackendIdentity {
        self.identity.clone()
    }
}
