use std::path::PathBuf;

/// Errors produced by the evaluation harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("no tasks defined")]
    NoTasksDefined,

    #[error("duplicate task id '{0}'")]
    DuplicateTaskId(String),

    #[error("unknown task '{unknown}', valid ids: {valid}")]
    UnknownTask { unknown: String, valid: String },

    #[error("nonstandard task configuration for '{task_id}': {detail} (pass --allow-nonstandard to override)")]
    Nonstandard { task_id: String, detail: String },

    #[error("{path}:{line}: {detail}")]
    Data {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bit count {0} out of range 1..=32")]
    InvalidBitCount(u32),

    #[error("randbelow bound must be positive")]
    InvalidBound,

    #[error("sample size {k} exceeds population {n}")]
    SampleTooLarge { n: usize, k: usize },

    #[error("population size {0} exceeds supported range (< 2^32)")]
    PopulationTooLarge(usize),

    #[error("render error for task '{task_id}' row {source_row}: {detail}")]
    Render {
        task_id: String,
        source_row: usize,
        detail: String,
    },

    #[error("scoring error: {0}")]
    Scoring(String),

    #[error("backend error: {0}")]
    Backend(String),

    #[error("backend returned token alignment that does not cover the continuation (request {request_id}): {detail}")]
    Alignment { request_id: String, detail: String },

    #[error("transport failure after {attempts} attempts for request(s) {request_ids}: {detail}")]
    Transport {
        attempts: u32,
        request_ids: String,
        detail: String,
    },

    #[error("replay archive has no entry for request {0}")]
    ReplayMiss(String),

    #[error("window enforcement unavailable: {0} (pass --no-window-check to skip)")]
    WindowCheckUnavailable(String),

    #[error("continuation alone exceeds the context window ({count} > {limit} tokens)")]
    ContinuationTooLong { count: usize, limit: usize },

    #[error("report error: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
