//! Reproducible evaluation of language models on multiple-choice benchmarks.
//!
//! The pipeline: a task registry with deterministic instance selection
//! ([`tasks`], [`sampler`]), byte-exact prompt rendering for the cloze (CF)
//! and multiple-choice (MCF) formulations ([`render`]), pluggable scoring
//! backends ([`backend`]), per-instance scoring under four log-probability
//! normalizations ([`score`]), and suite aggregation with best-of-formulation
//! final scores ([`aggregate`], [`report`]). [`run`] ties them together.

pub mod aggregate;
pub mod backend;
pub mod error;
pub mod hash;
pub mod render;
pub mod report;
pub mod run;
pub mod sampler;
pub mod score;
pub mod tasks;

pub use aggregate::{
    best_of_score, diff_oracle, macro_micro, std_err, task_accuracy, win_percentage, Formulation,
};
pub use backend::{
    build_backend, score_batch, BackendDescriptor, BackendIdentity, BackendKind, HttpBackend,
    MockBackend, Recorder, ReplayBackend, RetryPolicy, ScoringBackend,
};
pub use error::{Error, Result};
pub use render::{
    fit_to_window, render_cf, render_instance, render_mcf, render_unconditional, CfLayout,
    McfRender, PromptParts, RenderOptions, RequestRole, ScoreRequest, TokenCounter,
    TruncationReport, CONTEXT_WINDOW,
};
pub use report::{
    build_suite_report, emit_report, read_results, scheme_accuracies, write_results, Provenance,
    ReportFormat, SuiteReport, TaskResult,
};
pub use run::{run_eval, EvalOptions, EvalOutcome, FormulationMode, RunManifest};
pub use sampler::Mt19937;
pub use score::{
    normalize, predict, score_instance, InstanceResult, PerScheme, Prediction, ScoredContinuation,
};
pub use tasks::{
    display_name, load_instances, load_task_suite, select_eval_instances, FewShotExample, FieldMap,
    FormulationTemplate, Instance, Normalization, NumChoices, PromptStyle, Split, TaskSpec,
    TaskSuite, SAMPLE_SEED, SAMPLE_THRESHOLD, STANDARD_TASKS,
};
