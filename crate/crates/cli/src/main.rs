//! `mceval`: evaluate language models on multiple-choice benchmarks with a
//! fixed, reproducible procedure.

mod analyze;
mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use mceval_core::Error;

#[derive(Parser)]
#[command(
    name = "mceval",
    version,
    about = "Reproducible multiple-choice LLM evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an evaluation: both formulations per task, results + report files.
    Eval(EvalArgs),
    /// Print rendered prompts for golden-file diffing.
    Render(RenderArgs),
    /// Print the deterministic sample for (seed, n, k).
    Sample(SampleArgs),
    /// Cross-model normalization analyses over results files.
    Analyze(AnalyzeArgs),
    /// Recompute report files from a results file.
    Report(ReportArgs),
    /// Evaluate against a live backend while writing a replay archive.
    Record(RecordArgs),
    /// Evaluate answering only from a previously recorded archive.
    Replay(ReplayArgs),
}

#[derive(Args, Clone)]
struct EvalArgs {
    /// Task suite config file.
    #[arg(long, default_value = "data/config/tasks.json")]
    config: PathBuf,
    /// Comma-separated top-level task ids (default: the whole suite).
    #[arg(long, value_delimiter = ',')]
    tasks: Option<Vec<String>>,
    /// Scoring backend: mock, http, or replay.
    #[arg(long, default_value = "mock")]
    backend: String,
    /// Base URL of an OpenAI-compatible endpoint (http backend).
    #[arg(long)]
    endpoint: Option<String>,
    /// Model name sent to the backend and stamped into reports.
    #[arg(long, default_value = "mock-model")]
    model: String,
    /// Ask the backend to prepend its BOS token to every prompt.
    #[arg(long)]
    add_bos: bool,
    /// Maximum simultaneous scoring requests.
    #[arg(long, default_value_t = 1)]
    max_parallel: usize,
    /// Evaluate at most this many instances per leaf task (debugging).
    #[arg(long)]
    limit: Option<usize>,
    /// both, cf-only, or mcf-only.
    #[arg(long, default_value = "both")]
    formulation: String,
    /// Compute all four normalizations (adds the unconditional pass).
    #[arg(long)]
    analyze_norms: bool,
    #[arg(long, default_value = "out")]
    output_dir: PathBuf,
    /// Write a replay archive of every scored request.
    #[arg(long)]
    record: Option<PathBuf>,
    /// Answer from this replay archive instead of a live backend.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Accept task configs that deviate from the built-in standard.
    #[arg(long)]
    allow_nonstandard: bool,
    /// Skip context-window enforcement.
    #[arg(long)]
    no_window_check: bool,
    /// In-context examples per prompt.
    #[arg(long, default_value_t = 5)]
    num_shots: usize,
    /// Transport attempts per request before failing (http backend).
    #[arg(long, default_value_t = 3)]
    retry_attempts: u32,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, default_value = "data/config/tasks.json")]
    config: PathBuf,
    /// Task id (leaf ids like mmlu_abstract_algebra are accepted).
    #[arg(long)]
    task: String,
    /// cf or mcf.
    #[arg(long, default_value = "cf")]
    formulation: String,
    /// Source rows to render: "0", "0..5", or "0,3,7".
    #[arg(long, default_value = "0")]
    rows: String,
    #[arg(long, default_value_t = 0)]
    num_shots: usize,
    /// Byte-exact output of one part: "prompt", "prompt:<i>", or
    /// "completion:<i>" (single row only, no trailing newline).
    #[arg(long)]
    raw: Option<String>,
    #[arg(long)]
    allow_nonstandard: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, allow_negative_numbers = true)]
    seed: i64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Emit one JSON record instead of one index per line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// NAME=PATH results file per model; repeatable.
    #[arg(long = "input", required = true)]
    inputs: Vec<String>,
    /// md or json.
    #[arg(long, default_value = "md")]
    format: String,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    results: PathBuf,
    #[arg(long, default_value = "model")]
    model: String,
    #[arg(long, default_value = "out")]
    output_dir: PathBuf,
    /// Comma-separated subset of json, md, csv.
    #[arg(long, value_delimiter = ',', default_value = "json,md,csv")]
    formats: Vec<String>,
    #[arg(long, default_value = "data/config/tasks.json")]
    config: PathBuf,
    #[arg(long)]
    allow_nonstandard: bool,
}

#[derive(Args)]
struct RecordArgs {
    /// Archive file to write.
    #[arg(long)]
    archive: PathBuf,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Args)]
struct ReplayArgs {
    /// Archive file to answer from.
    #[arg(long)]
    archive: PathBuf,
    #[command(flatten)]
    eval: EvalArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => commands::eval(args),
        Command::Render(args) => commands::render(args),
        Command::Sample(args) => commands::sample(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Report(args) => commands::report(args),
        Command::Record(mut args) => {
            args.eval.record = Some(args.archive);
            commands::eval(args.eval)
        }
        Command::Replay(mut args) => {
            args.eval.backend = "replay".into();
            args.eval.replay = Some(args.archive);
            commands::eval(args.eval)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::UnknownTask { .. }))
            {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
