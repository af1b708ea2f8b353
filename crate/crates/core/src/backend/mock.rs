//! Fully specified deterministic model stand-in.
//!
//! Scores are a pure function of the request bytes: hash the UTF-8 context,
//! a 0x1F separator, then the continuation with 64-bit FNV-1a, and map the
//! digest into [-11.0, -1.0]. Tokens are maximal non-space runs. This gives
//! desk-scale determinism with realistic-looking spreads.

use crate::backend::{BackendIdentity, RawScore, ScoringBackend};
use crate::error::{Error, Result};
use crate::hash::fnv1a64;
use crate::render::ScoreRequest;

pub struct MockBackend {
    identity: BackendIdentity,
}

impl MockBackend {
    pub fn new(model_name: &str, add_bos: bool) -> Self {
        MockBackend {
            identity: BackendIdentity {
                model_name: model_name.to_owned(),
                add_bos,
            },
        }
    }

    pub fn logprob(context: &str, continuation: &str) -> f64 {
        let mut bytes = Vec::with_capacity(context.len() + continuation.len() + 1);
        bytes.extend_from_slice(context.as_bytes());
        bytes.push(0x1f);
        bytes.extend_from_slice(continuation.as_bytes());
        let h = fnv1a64(&bytes);
        -1.0 - (h % 100_000) as f64 / 10_000.0
    }

    fn runs(text: &str) -> usize {
        text.split_whitespace().count()
    }
}

impl ScoringBackend for MockBackend {
    fn score_one(&self, request: &ScoreRequest) -> Result<RawScore> {
        if request.continuation.is_empty() {
            return Err(Error::Backend("empty continuation".into()));
        }
        Ok(RawScore {
            logprob_sum: Self::logprob(&request.context, &request.continuation),
            token_count: Self::runs(&request.continuation).max(1),
        })
    }

    fn count_tokens(&self, text: &str) -> Result<usize> {
        Ok(Self::runs(text))
    }

    fn identity(&self) -> BackendIdentity {
        self.identity.clone()
    }
}
