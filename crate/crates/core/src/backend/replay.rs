//! Record/replay archives for offline, deterministic reruns.
//!
//! Recording wraps a live backend and captures every unique scored request
//! plus every token-count query. Replay answers only from the archive; a
//! missing entry is a hard error, never a silent re-query.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::backend::{BackendIdentity, RawScore, ScoringBackend};
use crate::error::{Error, Result};
use crate::hash::fnv1a64_hex;
use crate::render::ScoreRequest;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArchiveRecord {
    Meta {
        model_name: String,
        add_bos: bool,
        source: String,
    },
    Score {
        request_id: String,
        context_hash: String,
        continuation: String,
        logprob_sum: f64,
        token_count: usize,
    },
    Count {
        text_hash: String,
        count: usize,
    },
}

/// Wraps a live backend and buffers archive entries; call [`Recorder::finish`]
/// to write them out. Entries are keyed and emitted in sorted order so the
/// archive bytes do not depend on scoring order.
pub struct Recorder {
    inner: Box<dyn ScoringBackend>,
    source: String,
    scores: Mutex<BTreeMap<String, ArchiveRecord>>,
    counts: Mutex<BTreeMap<String, usize>>,
}

impl Recorder {
    pub fn new(inner: Box<dyn ScoringBackend>, source: &str) -> Self {
        Recorder {
            inner,
            source: source.to_owned(),
            scores: Mutex::new(BTreeMap::new()),
            counts: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn finish(self, path: &Path) -> Result<()> {
        let identity = self.inner.identity();
        let mut lines = Vec::new();
        let meta = ArchiveRecord::Meta {
            model_name: identity.model_name,
            add_bos: identity.add_bos,
            source: self.source,
        };
        lines.push(serde_json::to_string(&meta).expect("archive record serializes"));
        for record in self.scores.into_inner().expect("recorder lock").values() {
            lines.push(serde_json::to_string(record).expect("archive record serializes"));
        }
        for (text_hash, count) in self.counts.into_inner().expect("recorder lock") {
            let record = ArchiveRecord::Count { text_hash, count };
            lines.push(serde_json::to_string(&record).expect("archive record serializes"));
        }
        let mut body = lines.join("\n");
        body.push('\n');
        fs::write(path, body).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }
}

impl ScoringBackend for Recorder {
    fn score_one(&self, request: &ScoreRequest) -> Result<RawScore> {
        let score = self.inner.score_one(request)?;
        self.scores.lock().expect("recorder lock").insert(
            request.request_id.clone(),
            ArchiveRecord::Score {
                request_id: request.request_id.clone(),
                context_hash: fnv1a64_hex(request.context.as_bytes()),
                continuation: request.continuation.clone(),
                logprob_sum: score.logprob_sum,
                token_count: score.token_count,
            },
        );
        Ok(score)
    }

    fn count_tokens(&self, text: &str) -> Result<usize> {
        let count = self.inner.count_tokens(text)?;
        self.counts
            .lock()
            .expect("recorder lock")
            .insert(fnv1a64_hex(text.as_bytes()), count);
        Ok(count)
    }

    fn identity(&self) -> BackendIdentity {
        self.inner.identity()
    }
}

pub struct ReplayBackend {
    identity: BackendIdentity,
    scores: BTreeMap<String, RawScore>,
    counts: BTreeMap<String, usize>,
}

impl ReplayBackend {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        let mut identity = None;
        let mut scores = BTreeMap::new();
        let mut counts = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: ArchiveRecord = serde_json::from_str(line).map_err(|e| Error::Data {
                path: path.to_path_buf(),
                line: idx + 1,
                detail: format!("malformed archive record: {e}"),
            })?;
            match record {
                ArchiveRecord::Meta {
                    model_name,
                    add_bos,
                    ..
                } => {
                    identity = Some(BackendIdentity {
                        model_name,
                        add_bos,
                    });
                }
                ArchiveRecord::Score {
                    request_id,
                    logprob_sum,
                    token_count,
                    ..
                } => {
                    scores.insert(
                        request_id,
                        RawScore {
                            logprob_sum,
                            token_count,
                        },
                    );
                }
                ArchiveRecord::Count { text_hash, count } => {
                    counts.insert(text_hash, count);
                }
            }
        }
        let identity = identity.ok_or_else(|| {
            Error::Backend(format!("{}: archive has no meta record", path.display()))
        })?;
        Ok(ReplayBackend {
            identity,
            scores,
            counts,
        })
    }
}

impl ScoringBackend for ReplayBackend {
    fn score_one(&self, request: &ScoreRequest) -> Result<RawScore> {
        self.scores
            .get(&request.request_id)
            .copied()
            .ok_or_else(|| Error::ReplayMiss(request.request_id.clone()))
    }

    fn count_tokens(&self, text: &str) -> Result<usize> {
        let key = fnv1a64_hex(text.as_bytes());
        self.counts
            .get(&key)
            .copied()
            .ok_or_else(|| Error::ReplayMiss(format!("token count {key}")))
    }

    fn identity(&self) -> BackendIdentity {
        self.identity.clone()
    }
}
