//! Scoring backends: a uniform interface over model providers.
//!
//! Every backend answers (context, continuation) pairs with the summed
//! log-probability of the continuation tokens and their count. Batches may
//! fan out up to `max_parallel` requests; results are always returned in
//! request order, so output bytes do not depend on completion order.

mod http;
mod mock;
mod replay;

pub use http::HttpBackend;
pub use mock::MockBackend;
pub use replay::{ArchiveRecord, Recorder, ReplayBackend};

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::{ScoreRequest, TokenCounter};
use crate::score::ScoredContinuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Http,
    Mock,
    Replay,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_backoff: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 3,
            base_backoff: Duration::from_millis(250),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BackendDescriptor {
    pub kind: BackendKind,
    pub endpoint: Option<String>,
    pub model_name: String,
    pub add_bos: bool,
    pub max_parallel: usize,
    pub retry: RetryPolicy,
    /// Replay archive path (required for `kind: replay`).
    pub archive: Option<PathBuf>,
}

impl BackendDescriptor {
    pub fn mock(model_name: &str) -> Self {
        BackendDescriptor {
            kind: BackendKind::Mock,
            endpoint: None,
            model_name: model_name.to_owned(),
            add_bos: false,
            max_parallel: 1,
            retry: RetryPolicy::default(),
            archive: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_parallel < 1 {
            return Err(Error::Backend("max_parallel must be at least 1".into()));
        }
        if self.kind == BackendKind::Http && self.endpoint.is_none() {
            return Err(Error::Backend("http backend requires an endpoint".into()));
        }
        if self.kind == BackendKind::Replay && self.archive.is_none() {
            return Err(Error::Backend("replay backend requires an archive".into()));
        }
        Ok(())
    }
}

/// The scoring model's identity as carried into report provenance. Transport
/// details (endpoint, parallelism, retries) deliberately stay out so that a
/// replayed run reproduces the original report bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendIdentity {
    pub model_name: String,
    pub add_bos: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawScore {
    pub logprob_sum: f64,
    pub token_count: usize,
}

pub trait ScoringBackend: Sync {
    fn score_one(&self, request: &ScoreRequest) -> Result<RawScore>;
    fn count_tokens(&self, text: &str) -> Result<usize>;
    fn identity(&self) -> BackendIdentity;
}

impl TokenCounter for &dyn ScoringBackend {
    fn count_tokens(&self, text: &str) -> Result<usize> {
        (**self).count_tokens(text)
    }
}

/// Construct the backend named by a descriptor.
pub fn build_backend(descriptor: &BackendDescriptor) -> Result<Box<dyn ScoringBackend>> {
    descriptor.validate()?;
    Ok(match descriptor.kind {
        BackendKind::Mock => Box::new(MockBackend::new(&descriptor.model_name, descriptor.add_bos)),
        BackendKind::Http => Box::new(HttpBackend::from_descriptor(descriptor)?),
        BackendKind::Replay => Box::new(ReplayBackend::load(
            descriptor.archive.as_ref().expect("validated above"),
        )?),
    })
}

/// Score a batch: duplicate request ids collapse to one upstream call, up to
/// `max_parallel` requests run simultaneously, and `output[i]` answers
/// `requests[i]`.
pub fn score_batch(
    backend: &dyn ScoringBackend,
    requests: &[ScoreRequest],
    max_parallel: usize,
) -> Result<Vec<ScoredContinuation>> {
    if requests.is_empty() {
        return Ok(Vec::new());
    }
    let mut unique: Vec<&ScoreRequest> = Vec::new();
    let mut index_of: HashMap<&str, usize> = HashMap::new();
    for req in requests {
        if !index_of.contains_key(req.request_id.as_str()) {
            index_of.insert(req.request_id.as_str(), unique.len());
            unique.push(req);
        }
    }

    let workers = max_parallel.max(1).min(unique.len());
    let cursor = AtomicUsize::new(0);
    let mut collected: Vec<(usize, Result<RawScore>)> = Vec::with_capacity(unique.len());
    if workers <= 1 {
        for (i, req) in unique.iter().enumerate() {
            collected.push((i, backend.score_one(req)));
        }
    } else {
        let results = std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(workers);
            for _ in 0..workers {
                let cursor = &cursor;
                let unique = &unique;
                handles.push(scope.spawn(move || {
                    let mut local = Vec::new();
                    loop {
                        let i = cursor.fetch_add(1, Ordering::Relaxed);
                        if i >= unique.len() {
                            break;
                        }
                        local.push((i, backend.score_one(unique[i])));
                    }
                    local
                }));
            }
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scoring worker panicked"))
                .collect::<Vec<_>>()
        });
        collected = results;
    }

    let mut raw: Vec<Option<RawScore>> = vec![None; unique.len()];
    let mut failures: Vec<String> = Vec::new();
    let mut first_error: Option<Error> = None;
    for (i, result) in collected {
        match result {
            Ok(score) => raw[i] = Some(score),
            Err(err) => {
                failures.push(unique[i].request_id.clone());
                if first_error.is_none() {
                    first_error = Some(err);
                }
            }
        }
    }
    if let Some(err) = first_error {
        failures.sort();
        return Err(Error::Transport {
            attempts: 0,
            request_ids: failures.join(", "),
            detail: err.to_string(),
        });
    }

    requests
        .iter()
        .map(|req| {
            let idx = index_of[req.request_id.as_str()];
            let score = raw[idx].expect("all scores gathered");
            validate_score(req, score)?;
            Ok(ScoredContinuation {
                request_id: req.request_id.clone(),
                logprob_sum: score.logprob_sum,
                token_count: score.token_count,
                char_count: req.continuation.chars().count(),
            })
        })
        .collect()
}

fn validate_score(req: &ScoreRequest, score: RawScore) -> Result<()> {
    if !score.logprob_sum.is_finite() || score.logprob_sum > 0.0 {
        return Err(Error::Backend(format!(
            "request {}: invalid log-probability {}",
            req.request_id, score.logprob_sum
        )));
    }
    if score.token_count == 0 {
        return Err(Error::Backend(format!(
            "request {}: zero continuation tokens",
            req.request_id
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn req(context: &str, continuation: &str) -> ScoreRequest {
        ScoreRequest {
            request_id: crate::render::request_id(context, continuation),
            context: Arc::from(context),
            continuation: continuation.to_owned(),
            role: crate::render::RequestRole::CfChoice,
            choice_index: 0,
            task_id: "toy".into(),
            source_row: 0,
        }
    }

    #[test]
    fn empty_batch_is_empty() {
        let backend = MockBackend::new("m", false);
        assert!(score_batch(&backend, &[], 4).unwrap().is_empty());
    }

    struct CountingBackend {
        inner: MockBackend,
        calls: AtomicUsize,
    }

    impl ScoringBackend for CountingBackend {
        fn score_one(&self, request: &ScoreRequest) -> Result<RawScore> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.inner.score_one(request)
        }
        fn count_tokens(&self, text: &str) -> Result<usize> {
            self.inner.count_tokens(text)
        }
        fn identity(&self) -> BackendIdentity {
            self.inner.identity()
        }
    }

    #[test]
    fn duplicates_share_one_upstream_call() {
        let backend = CountingBackend {
            inner: MockBackend::new("m", false),
            calls: AtomicUsize::new(0),
        };
        let a = req("ctx", " one");
        let b = req("ctx", " one");
        let c = req("ctx", " two");
        let out = score_batch(&backend, &[a, b, c], 2).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0], out[1]);
        assert_ne!(out[0].request_id, out[2].request_id);
        assert_eq!(backend.calls.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn order_matches_input_under_parallelism() {
        let backend = MockBackend::new("m", false);
        let requests: Vec<ScoreRequest> = (0..64)
            .map(|i| req("shared", &format!(" choice {i}")))
            .collect();
        let serial = score_batch(&backend, &requests, 1).unwrap();
        let parallel = score_batch(&backend, &requests, 16).unwrap();
        assert_eq!(serial, parallel);
        for (req, out) in requests.iter().zip(&serial) {
            assert_eq!(req.request_id, out.request_id);
        }
    }
}
