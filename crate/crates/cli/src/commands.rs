use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};

use mceval_core::{
    build_suite_report, emit_report, load_instances, load_task_suite, read_results, render_cf,
    render_mcf, BackendDescriptor, BackendIdentity, BackendKind, CfLayout, EvalOptions,
    FormulationMode, Instance, Mt19937, Provenance, ReportFormat, RetryPolicy, TaskSpec,
};

use crate::{EvalArgs, RenderArgs, ReportArgs, SampleArgs};

fn backend_descriptor(args: &EvalArgs) -> anyhow::Result<BackendDescriptor> {
    let kind = match args.backend.as_str() {
        "mock" => BackendKind::Mock,
        "http" => BackendKind::Http,
        "replay" => BackendKind::Replay,
        other => bail!("unknown backend '{other}' (expected mock, http, or replay)"),
    };
    let kind = if args.replay.is_some() {
        BackendKind::Replay
    } else {
        kind
    };
    Ok(BackendDescriptor {
        kind,
        endpoint: args.endpoint.clone(),
        model_name: args.model.clone(),
        add_bos: args.add_bos,
        max_parallel: args.max_parallel,
        retry: RetryPolicy {
            max_attempts: args.retry_attempts.max(1),
            ..RetryPolicy::default()
        },
        archive: args.replay.clone(),
    })
}

pub fn eval(args: EvalArgs) -> anyhow::Result<ExitCode> {
    let descriptor = backend_descriptor(&args)?;
    let opts = EvalOptions {
        config_path: args.config.clone(),
        tasks: args.tasks.clone(),
        formulation: FormulationMode::parse(&args.formulation)?,
        analyze_norms: args.analyze_norms,
        limit: args.limit,
        num_shots: args.num_shots,
        allow_nonstandard: args.allow_nonstandard,
        no_window_check: args.no_window_check,
        output_dir: args.output_dir.clone(),
        record: args.record.clone(),
    };
    let outcome = mceval_core::run_eval(&opts, &descriptor)?;
    for task in &outcome.report.tasks {
        println!(
            "{}: {:.1} ({:?}, n={})",
            task.task_id,
            task.final_score * 100.0,
            task.chosen_formulation,
            task.n_evaluated
        );
    }
    println!("average: {:.1}", outcome.report.suite_average * 100.0);
    println!("outputs: {}", args.output_dir.display());
    if outcome.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for (task_id, message) in &outcome.failures {
            eprintln!("task failed: {task_id}: {message}");
        }
        Ok(ExitCode::FAILURE)
    }
}

fn parse_rows(spec: &str, available: usize) -> anyhow::Result<Vec<usize>> {
    let spec = spec.trim();
    let rows: Vec<usize> = if let Some((start, end)) = spec.split_once("..") {
        let start: usize = start.parse().context("row range start")?;
        let end: usize = end.parse().context("row range end")?;
        (start..end).collect()
    } else {
        spec.split(',')
            .map(|part| part.trim().parse::<usize>().context("row index"))
            .collect::<anyhow::Result<Vec<_>>>()?
    };
    if let Some(&bad) = rows.iter().find(|&&r| r >= available) {
        bail!("row {bad} out of range ({available} instances)");
    }
    Ok(rows)
}

fn find_task<'a>(suite: &'a mceval_core::TaskSuite, task_id: &str) -> anyhow::Result<&'a TaskSpec> {
    match suite.get(task_id) {
        Some(spec) if spec.is_leaf() => Ok(spec),
        Some(_) => {
            let first_child = suite
                .subtasks_of(task_id)
                .next()
                .map(|s| s.task_id.clone())
                .unwrap_or_default();
            bail!("'{task_id}' is a task group; render one of its subtasks (e.g. {first_child})")
        }
        None => {
            let valid: Vec<String> = suite.specs.iter().map(|s| s.task_id.clone()).collect();
            Err(mceval_core::Error::UnknownTask {
                unknown: task_id.to_owned(),
                valid: valid.join(", "),
            }
            .into())
        }
    }
}

struct RenderedRow {
    prompts: Vec<String>,
    completions: Vec<String>,
}

fn render_row(
    task: &TaskSpec,
    inst: &Instance,
    formulation: &str,
    num_shots: usize,
) -> anyhow::Result<RenderedRow> {
    match formulation {
        "cf" => match render_cf(task, inst, num_shots)? {
            CfLayout::SharedContext {
                parts,
                continuations,
            } => Ok(RenderedRow {
                prompts: vec![parts.join()],
                completions: continuations,
            }),
            CfLayout::SharedContinuation {
                parts,
                continuation,
            } => Ok(RenderedRow {
                prompts: parts.iter().map(|p| p.join()).collect(),
                completions: vec![continuation],
            }),
        },
        "mcf" => {
            let rendered = render_mcf(task, inst, num_shots)?;
            Ok(RenderedRow {
                prompts: vec![rendered.parts.join()],
                completions: rendered.labels,
            })
        }
        other => bail!("unknown formulation '{other}' (expected cf or mcf)"),
    }
}

pub fn render(args: RenderArgs) -> anyhow::Result<ExitCode> {
    let suite = load_task_suite(&args.config, !args.allow_nonstandard)?;
    let task = find_task(&suite, &args.task)?;
    let instances = load_instances(task)?;
    let rows = parse_rows(&args.rows, instances.len())?;

    if let Some(raw) = &args.raw {
        if rows.len() != 1 {
            bail!("--raw requires exactly one row");
        }
        let rendered = render_row(task, &instances[rows[0]], &args.formulation, args.num_shots)?;
        let text = match raw.split_once(':') {
            None if raw == "prompt" => &rendered.prompts[0],
            Some(("prompt", idx)) => {
                let idx: usize = idx.parse().context("prompt index")?;
                rendered
                    .prompts
                    .get(idx)
                    .with_context(|| format!("prompt index {idx} out of range"))?
            }
            Some(("completion", idx)) => {
                let idx: usize = idx.parse().context("completion index")?;
                rendered
                    .completions
                    .get(idx)
                    .with_context(|| format!("completion index {idx} out of range"))?
            }
            _ => bail!("--raw expects prompt, prompt:<i>, or completion:<i>"),
        };
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(ExitCode::SUCCESS);
    }

    for row in rows {
        let rendered = render_row(task, &instances[row], &args.formulation, args.num_shots)?;
        println!("=== {} row {row} ({}) ===", task.task_id, args.formulation);
        for (i, prompt) in rendered.prompts.iter().enumerate() {
            if rendered.prompts.len() > 1 {
                println!("--- prompt {i} ---");
            }
            println!("{prompt}");
        }
        for (i, completion) in rendered.completions.iter().enumerate() {
            let marker = if rendered.completions.len() > 1 && i == instances[row].gold {
                " (gold)"
            } else {
                ""
            };
            println!("--- completion {i}{marker} ---");
            println!("{completion}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn sample(args: SampleArgs) -> anyhow::Result<ExitCode> {
    if args.seed < 0 {
        bail!("seed must be non-negative");
    }
    let mut rng = Mt19937::seeded(args.seed as u64);
    let indices = rng.sample_indices(args.n, args.k)?;
    if args.json {
        let record = serde_json::json!({
            "seed": args.seed,
            "n": args.n,
            "k": args.k,
            "indices": indices,
        });
        println!("{record}");
    } else {
        let mut stdout = std::io::stdout().lock();
        for index in indices {
            writeln!(stdout, "{index}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn report(args: ReportArgs) -> anyhow::Result<ExitCode> {
    let suite = load_task_suite(&args.config, !args.allow_nonstandard)?;
    let results = read_results(&args.results)?;
    if results.is_empty() {
        bail!("{}: no result records", args.results.display());
    }
    let mut per_task: BTreeMap<String, Vec<_>> = BTreeMap::new();
    for record in results {
        per_task
            .entry(record.task_id.clone())
            .or_default()
            .push(record);
    }
    let config_bytes = std::fs::read(&args.config)?;
    let provenance = Provenance {
        harness_version: mceval_core::run::HARNESS_VERSION.to_owned(),
        config_hash: mceval_core::hash::sha256_hex(&config_bytes),
        fixture_hashes: BTreeMap::new(),
        backend: BackendIdentity {
            model_name: args.model.clone(),
            add_bos: false,
        },
    };
    let report = build_suite_report(&args.model, &suite, &per_task, provenance)?;
    std::fs::create_dir_all(&args.output_dir)?;
    for name in &args.formats {
        let format = ReportFormat::parse(name)?;
        let bytes = emit_report(&report, format)?;
        let filename = match format {
            ReportFormat::Json => "report.json",
            ReportFormat::Markdown => "report.md",
            ReportFormat::Csv => "report.csv",
        };
        let path: &Path = &args.output_dir.join(filename);
        std::fs::write(path, bytes)?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
