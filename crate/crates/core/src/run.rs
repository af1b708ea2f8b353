//! End-to-end evaluation runs: load the suite, select instances, render both
//! formulations, score against a backend, and write results, reports, and
//! the run manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::backend::{build_backend, score_batch, BackendDescriptor, Recorder, ScoringBackend};
use crate::error::{Error, Result};
use crate::hash::sha256_hex;
use crate::render::{render_instance, RenderOptions, TokenCounter};
use crate::report::{
    build_suite_report, emit_report, write_results, Provenance, ReportFormat, SuiteReport,
};
use crate::score::{score_instance, InstanceResult};
use crate::tasks::{
    load_instances, load_task_suite, select_eval_instances, Instance, Normalization, TaskSpec,
    TaskSuite, SAMPLE_SEED,
};

pub const HARNESS_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulationMode {
    Both,
    CfOnly,
    McfOnly,
}

impl FormulationMode {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "both" => Ok(FormulationMode::Both),
            "cf-only" => Ok(FormulationMode::CfOnly),
            "mcf-only" => Ok(FormulationMode::McfOnly),
            other => Err(Error::Config(format!(
                "unknown formulation '{other}' (expected both, cf-only, or mcf-only)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub config_path: PathBuf,
    /// Top-level task ids to run; `None` runs the whole suite.
    pub tasks: Option<Vec<String>>,
    pub formulation: FormulationMode,
    pub analyze_norms: bool,
    /// Cap on evaluated instances per leaf task, applied after selection.
    pub limit: Option<usize>,
    pub num_shots: usize,
    pub allow_nonstandard: bool,
    pub no_window_check: bool,
    pub output_dir: PathBuf,
    pub record: Option<PathBuf>,
}

impl EvalOptions {
    pub fn new(config_path: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        EvalOptions {
            config_path: config_path.into(),
            tasks: None,
            formulation: FormulationMode::Both,
            analyze_norms: false,
            limit: None,
            num_shots: 5,
            allow_nonstandard: false,
            no_window_check: false,
            output_dir: output_dir.into(),
            record: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskProvenance {
    pub task_id: String,
    pub n_total: usize,
    pub n_selected: usize,
    pub n_evaluated: usize,
    pub sampled: bool,
    pub sample_seed: Option<u64>,
    /// SHA-256 over the comma-joined selected source rows.
    pub selection_hash: Option<String>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestStable {
    pub harness_version: String,
    pub config_hash: String,
    pub backend: BackendDescriptor,
    pub formulation: FormulationMode,
    pub analyze_norms: bool,
    pub limit: Option<usize>,
    pub num_shots: usize,
    pub tasks: Vec<TaskProvenance>,
    pub fixture_hashes: BTreeMap<String, String>,
}

/// Run provenance. `stable_hash` covers everything except timestamps and is
/// identical across re-runs with identical inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub stable: ManifestStable,
    pub stable_hash: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

#[derive(Debug)]
pub struct EvalOutcome {
    pub report: SuiteReport,
    pub manifest: RunManifest,
    pub results_path: PathBuf,
    pub failures: Vec<(String, String)>,
}

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn hash_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(sha256_hex(&bytes))
}

/// Pick the leaf specs to evaluate, in suite order.
fn selected_leaves<'a>(
    suite: &'a TaskSuite,
    requested: &Option<Vec<String>>,
) -> Result<Vec<&'a TaskSpec>> {
    let top_ids = suite.top_level_ids();
    let wanted: Vec<String> = match requested {
        Some(ids) => {
            for id in ids {
                if !top_ids.iter().any(|t| t == id) {
                    return Err(Error::UnknownTask {
                        unknown: id.clone(),
                        valid: top_ids.join(", "),
                    });
                }
            }
            ids.clone()
        }
        None => top_ids,
    };
    let mut leaves = Vec::new();
    for spec in &suite.specs {
        let top = spec.subtask_of.as_deref().unwrap_or(&spec.task_id);
        if spec.is_leaf() && wanted.iter().any(|w| w == top) {
            leaves.push(spec);
        }
    }
    Ok(leaves)
}

struct TaskEval {
    results: Vec<InstanceResult>,
    provenance: TaskProvenance,
}

fn eval_task(
    spec: &TaskSpec,
    backend: &dyn ScoringBackend,
    opts: &EvalOptions,
    max_parallel: usize,
) -> Result<TaskEval> {
    let instances = load_instances(spec)?;
    let selected = select_eval_instances(&instances, spec)?;
    let sampled = selected.len() != instances.len();
    let selection_hash = {
        let rows: Vec<String> = selected.iter().map(|i| i.source_row.to_string()).collect();
        Some(sha256_hex(rows.join(",").as_bytes()))
    };
    let evaluated: &[Instance] = match opts.limit {
        Some(limit) => &selected[..limit.min(selected.len())],
        None => &selected,
    };
    if evaluated.is_empty() {
        return Err(Error::Config(format!(
            "task '{}' has no instances to evaluate",
            spec.task_id
        )));
    }

    let include_cf = opts.formulation != FormulationMode::McfOnly;
    let include_mcf = opts.formulation != FormulationMode::CfOnly;
    let include_unconditional =
        include_cf && (opts.analyze_norms || spec.cf_normalization == Normalization::Pmi);
    let counter_backend: &dyn ScoringBackend = backend;
    let counter: Option<&dyn TokenCounter> = if opts.no_window_check {
        None
    } else {
        Some(&counter_backend)
    };
    let render_opts = RenderOptions {
        num_shots: opts.num_shots,
        include_cf,
        include_mcf,
        include_unconditional,
        counter,
    };

    let mut shapes = Vec::with_capacity(evaluated.len());
    let mut requests = Vec::new();
    for inst in evaluated {
        let rendered = render_instance(spec, inst, &render_opts)?;
        shapes.push((
            rendered.cf.len(),
            rendered.unconditional.len(),
            rendered.mcf.len(),
        ));
        requests.extend(rendered.cf);
        requests.extend(rendered.unconditional);
        requests.extend(rendered.mcf);
    }
    let scored = score_batch(backend, &requests, max_parallel)?;

    let mut results = Vec::with_capacity(evaluated.len());
    let mut cursor = 0usize;
    for (inst, (n_cf, n_uncond, n_mcf)) in evaluated.iter().zip(shapes) {
        let cf = &scored[cursor..cursor + n_cf];
        cursor += n_cf;
        let uncond = &scored[cursor..cursor + n_uncond];
        cursor += n_uncond;
        let mcf = &scored[cursor..cursor + n_mcf];
        cursor += n_mcf;
        results.push(score_instance(
            &spec.task_id,
            inst.source_row,
            inst.gold,
            inst.choices.len(),
            (n_cf > 0).then_some(cf),
            (n_uncond > 0).then_some(uncond),
            (n_mcf > 0).then_some(mcf),
        )?);
    }

    Ok(TaskEval {
        results,
        provenance: TaskProvenance {
            task_id: spec.task_id.clone(),
            n_total: instances.len(),
            n_selected: selected.len(),
            n_evaluated: evaluated.len(),
            sampled,
            sample_seed: sampled.then_some(SAMPLE_SEED),
            selection_hash,
            failure: None,
        },
    })
}

/// Run a full evaluation and write `results.jsonl`, `report.{json,md,csv}`,
/// and `manifest.json` under the output directory.
///
/// Individual task failures do not abort the run: their markers land in the
/// manifest, completed tasks keep their results, and the failure list comes
/// back to the caller for exit-status handling.
pub fn run_eval(opts: &EvalOptions, descriptor: &BackendDescriptor) -> Result<EvalOutcome> {
    let started = now_ms();
    if opts.num_shots != 5 && !opts.allow_nonstandard {
        return Err(Error::Nonstandard {
            task_id: "*".into(),
            detail: format!("the standard prompt uses 5 shots, got {}", opts.num_shots),
        });
    }
    let suite = load_task_suite(&opts.config_path, !opts.allow_nonstandard)?;
    let leaves = selected_leaves(&suite, &opts.tasks)?;
    if leaves.is_empty() {
        return Err(Error::NoTasksDefined);
    }

    descriptor.validate()?;
    let inner = build_backend(descriptor)?;
    let (recorder, plain) = if opts.record.is_some() {
        (Some(Recorder::new(inner, kind_name(descriptor))), None)
    } else {
        (None, Some(inner))
    };
    let backend: &dyn ScoringBackend = match (&recorder, &plain) {
        (Some(r), _) => r,
        (None, Some(b)) => &**b,
        (None, None) => unreachable!(),
    };

    let mut per_task: BTreeMap<String, Vec<InstanceResult>> = BTreeMap::new();
    let mut all_results: Vec<InstanceResult> = Vec::new();
    let mut provenances: Vec<TaskProvenance> = Vec::new();
    let mut failures: Vec<(String, String)> = Vec::new();
    for spec in &leaves {
        match eval_task(spec, backend, opts, descriptor.max_parallel) {
            Ok(eval) => {
                all_results.extend(eval.results.iter().cloned());
                per_task.insert(spec.task_id.clone(), eval.results);
                provenances.push(eval.provenance);
            }
            Err(err) => {
                let message = err.to_string();
                failures.push((spec.task_id.clone(), message.clone()));
                provenances.push(TaskProvenance {
                    task_id: spec.task_id.clone(),
                    n_total: 0,
                    n_selected: 0,
                    n_evaluated: 0,
                    sampled: false,
                    sample_seed: None,
                    selection_hash: None,
                    failure: Some(message),
                });
            }
        }
    }
    if per_task.is_empty() {
        let (task, detail) = failures
            .first()
            .cloned()
            .unwrap_or_else(|| ("<none>".into(), "no results".into()));
        return Err(Error::Report(format!(
            "every task failed; first: {task}: {detail}"
        )));
    }

    let mut fixture_hashes = BTreeMap::new();
    for spec in leaves.iter().filter(|s| per_task.contains_key(&s.task_id)) {
        if let Some(path) = &spec.instances_path {
            fixture_hashes.insert(format!("{}/instances", spec.task_id), hash_file(path)?);
        }
        if let Some(path) = &spec.shots_path {
            fixture_hashes.insert(format!("{}/shots", spec.task_id), hash_file(path)?);
        }
    }
    let config_hash = hash_file(&opts.config_path)?;

    let provenance = Provenance {
        harness_version: HARNESS_VERSION.to_owned(),
        config_hash: config_hash.clone(),
        fixture_hashes: fixture_hashes.clone(),
        backend: backend.identity(),
    };
    let report = build_suite_report(
        &backend.identity().model_name,
        &suite,
        &per_task,
        provenance,
    )?;

    fs::create_dir_all(&opts.output_dir).map_err(|e| Error::Io {
        path: opts.output_dir.clone(),
        source: e,
    })?;
    let results_path = opts.output_dir.join("results.jsonl");
    write_results(&results_path, &all_results)?;
    for (name, format) in [
        ("report.json", ReportFormat::Json),
        ("report.md", ReportFormat::Markdown),
        ("report.csv", ReportFormat::Csv),
    ] {
        let bytes = emit_report(&report, format)?;
        let path = opts.output_dir.join(name);
        fs::write(&path, bytes).map_err(|e| Error::Io { path, source: e })?;
    }

    let stable = ManifestStable {
        harness_version: HARNESS_VERSION.to_owned(),
        config_hash,
        backend: descriptor.clone(),
        formulation: opts.formulation,
        analyze_norms: opts.analyze_norms,
        limit: opts.limit,
        num_shots: opts.num_shots,
        tasks: provenances,
        fixture_hashes,
    };
    let stable_json =
        serde_json::to_vec(&stable).map_err(|e| Error::Report(format!("manifest: {e}")))?;
    let manifest = RunManifest {
        stable_hash: sha256_hex(&stable_json),
        stable,
        started_unix_ms: started,
        finished_unix_ms: now_ms(),
    };
    let manifest_path = opts.output_dir.join("manifest.json");
    let mut manifest_bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| Error::Report(format!("manifest: {e}")))?;
    manifest_bytes.push(b'\n');
    fs::write(&manifest_path, manifest_bytes).map_err(|e| Error::Io {
        path: manifest_path,
        source: e,
    })?;

    if let (Some(recorder), Some(path)) = (recorder, &opts.record) {
        recorder.finish(path)?;
    }

    Ok(EvalOutcome {
        report,
        manifest,
        results_path,
        failures,
    })
}

fn kind_name(descriptor: &BackendDescriptor) -> &'static str {
    match descriptor.kind {
        crate::backend::BackendKind::Mock => "mock",
        crate::backend::BackendKind::Http => "http",
        crate::backend::BackendKind::Replay => "replay",
    }
}
