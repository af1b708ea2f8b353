//! Suite reports: per-task results, provenance, and the three output
//! surfaces (machine JSON, human markdown, per-checkpoint CSV), plus the
//! line-delimited results file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::aggregate::{best_of_score, macro_micro, std_err, task_accuracy, Formulation};
use crate::error::{Error, Result};
use crate::score::{InstanceResult, PerScheme};
use crate::tasks::{display_name, Normalization, TaskSuite};

/// Marker appended to a score cell when the MCF formulation supplied it.
pub const MCF_MARKER: char = '\u{2020}';

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubtaskResult {
    pub task_id: String,
    pub n_evaluated: usize,
    pub cf_accuracy: Option<f64>,
    pub mcf_accuracy: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskResult {
    pub task_id: String,
    pub n_evaluated: usize,
    pub recommended_scheme: Normalization,
    /// CF accuracy under every computed scheme (macro-averaged over subtasks
    /// for grouped tasks).
    pub cf_accuracy: Option<PerScheme<f64>>,
    pub mcf_accuracy: Option<f64>,
    pub cf_std_err: Option<f64>,
    pub mcf_std_err: Option<f64>,
    /// Best-of-formulation score: max of the recommended-scheme CF accuracy
    /// and the MCF accuracy.
    pub final_score: f64,
    pub chosen_formulation: Formulation,
    pub final_std_err: f64,
    /// Instance-weighted averages, reported alongside the macro values for
    /// grouped tasks.
    pub micro_cf_accuracy: Option<f64>,
    pub micro_mcf_accuracy: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subtasks: Vec<SubtaskResult>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub harness_version: String,
    pub config_hash: String,
    pub fixture_hashes: BTreeMap<String, String>,
    pub backend: crate::backend::BackendIdentity,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub model: String,
    pub tasks: Vec<TaskResult>,
    /// Unweighted mean of the per-task best-of scores.
    pub suite_average: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
    Csv,
}

impl ReportFormat {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Report(format!("unknown report format '{other}'"))),
        }
    }
}

/// Serialize a report. Pure: identical reports yield identical bytes.
pub fn emit_report(report: &SuiteReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)
                .map_err(|e| Error::Report(format!("serialize report: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Markdown => Ok(markdown(report).into_bytes()),
        ReportFormat::Csv => Ok(csv(report).into_bytes()),
    }
}

fn score_cell(task: &TaskResult) -> String {
    let mut cell = format!("{:.1}", task.final_score * 100.0);
    if task.chosen_formulation == Formulation::Mcf && task.cf_accuracy.is_some() {
        cell.push(MCF_MARKER);
    }
    cell
}

fn markdown(report: &SuiteReport) -> String {
    let mut out = String::new();
    let mut header = String::from("| model |");
    let mut rule = String::from("|---|");
    let mut row = format!("| {} |", report.model);
    for task in &report.tasks {
        let _ = write!(header, " {} |", display_name(&task.task_id));
        rule.push_str("---|");
        let _ = write!(row, " {} |", score_cell(task));
    }
    let _ = write!(header, " average |");
    rule.push_str("---|");
    let _ = write!(row, " {:.1} |", report.suite_average * 100.0);
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "{rule}");
    let _ = writeln!(out, "{row}");
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{MCF_MARKER} marks tasks where the multiple-choice formulation supplied the score; \
         unmarked scores come from the cloze formulation. One standard error per task:"
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "| task | n | cf | mcf | final | std err |");
    let _ = writeln!(out, "|---|---|---|---|---|---|");
    for task in &report.tasks {
        let cf = task
            .cf_accuracy
            .as_ref()
            .and_then(|a| a.get(task.recommended_scheme).copied())
            .map(|a| format!("{:.1}", a * 100.0))
            .unwrap_or_else(|| "-".into());
        let mcf = task
            .mcf_accuracy
            .map(|a| format!("{:.1}", a * 100.0))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {:.1} |",
            display_name(&task.task_id),
            task.n_evaluated,
            cf,
            mcf,
            score_cell(task),
            task.final_std_err * 100.0,
        );
    }
    out
}

fn csv(report: &SuiteReport) -> String {
    let mut header = String::from("model");
    let mut row = report.model.clone();
    for task in &report.tasks {
        let _ = write!(header, ",{}", task.task_id);
        let _ = write!(row, ",{}", task.final_score);
    }
    header.push_str(",average\n");
    let _ = write!(row, ",{}", report.suite_average);
    row.push('\n');
    header.push_str(&row);
    header
}

// ---------------------------------------------------------------------------
// Results file.

pub fn write_results(path: &Path, results: &[InstanceResult]) -> Result<()> {
    let mut body = String::new();
    for r in results {
        let line = serde_json::to_string(r)
            .map_err(|e| Error::Report(format!("serialize result: {e}")))?;
        body.push_str(&line);
        body.push('\n');
    }
    fs::write(path, body).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn read_results(path: &Path) -> Result<Vec<InstanceResult>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let result: InstanceResult = serde_json::from_str(line).map_err(|e| Error::Data {
            path: path.to_path_buf(),
            line: idx + 1,
            detail: format!("malformed result record: {e}"),
        })?;
        out.push(result);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Building task results from per-instance records.

/// CF accuracy under every scheme the results carry; `None` when any record
/// lacks a CF result, pmi entry absent unless every record computed it.
pub fn scheme_accuracies(results: &[InstanceResult]) -> Result<Option<PerScheme<f64>>> {
    if results.is_empty() || results.iter().any(|r| r.cf.is_none()) {
        return Ok(None);
    }
    let pmi_everywhere = results
        .iter()
        .all(|r| r.cf.as_ref().is_some_and(|cf| cf.prediction.pmi.is_some()));
    Ok(Some(PerScheme {
        none: task_accuracy(results, Formulation::Cf, Some(Normalization::None))?,
        token: task_accuracy(results, Formulation::Cf, Some(Normalization::Token))?,
        char: task_accuracy(results, Formulation::Cf, Some(Normalization::Char))?,
        pmi: if pmi_everywhere {
            Some(task_accuracy(
                results,
                Formulation::Cf,
                Some(Normalization::Pmi),
            )?)
        } else {
            None
        },
    }))
}

fn has_mcf(results: &[InstanceResult]) -> bool {
    !results.is_empty() && results.iter().all(|r| r.mcf.is_some())
}

/// Aggregate a flat (ungrouped) task.
pub fn task_result(
    task_id: &str,
    recommended: Normalization,
    results: &[InstanceResult],
) -> Result<TaskResult> {
    if results.is_empty() {
        return Err(Error::Report(format!("task '{task_id}' has no results")));
    }
    let n = results.len();
    let cf_accuracy = scheme_accuracies(results)?;
    let mcf_accuracy = if has_mcf(results) {
        Some(task_accuracy(results, Formulation::Mcf, None)?)
    } else {
        None
    };
    finish_task_result(
        task_id,
        recommended,
        n,
        cf_accuracy,
        mcf_accuracy,
        None,
        None,
        Vec::new(),
    )
}

/// Aggregate a grouped task (per-subtask macro average, micro alongside).
pub fn grouped_task_result(
    task_id: &str,
    recommended: Normalization,
    per_subtask: &[(String, Vec<InstanceResult>)],
) -> Result<TaskResult> {
    if per_subtask.is_empty() {
        return Err(Error::Report(format!(
            "task '{task_id}' has no subtask results"
        )));
    }
    let mut sizes = Vec::new();
    let mut cf_accs: Option<Vec<PerScheme<f64>>> = Some(Vec::new());
    let mut mcf_accs: Option<Vec<f64>> = Some(Vec::new());
    let mut subtasks = Vec::new();
    for (sub_id, results) in per_subtask {
        if results.is_empty() {
            return Err(Error::Report(format!("subtask '{sub_id}' has no results")));
        }
        sizes.push(results.len());
        let cf = scheme_accuracies(results)?;
        match (&mut cf_accs, cf) {
            (Some(list), Some(acc)) => list.push(acc),
            (slot, _) => *slot = None,
        }
        let mcf = if has_mcf(results) {
            Some(task_accuracy(results, Formulation::Mcf, None)?)
        } else {
            None
        };
        match (&mut mcf_accs, mcf) {
            (Some(list), Some(acc)) => list.push(acc),
            (slot, _) => *slot = None,
        }
        subtasks.push(SubtaskResult {
            task_id: sub_id.clone(),
            n_evaluated: results.len(),
            cf_accuracy: results
                .first()
                .and_then(|_| scheme_accuracies(results).ok().flatten())
                .and_then(|a| a.get(recommended).copied()),
            mcf_accuracy: if has_mcf(results) {
                Some(task_accuracy(results, Formulation::Mcf, None)?)
            } else {
                None
            },
        });
    }
    let n_total: usize = sizes.iter().sum();

    let mut micro_cf = None;
    let cf_accuracy = match cf_accs {
        Some(list) => {
            let one = |pick: fn(&PerScheme<f64>) -> f64| -> Result<f64> {
                let values: Vec<f64> = list.iter().map(pick).collect();
                Ok(macro_micro(&values, &sizes)?.0)
            };
            let pmi = if list.iter().all(|a| a.pmi.is_some()) {
                let values: Vec<f64> = list.iter().map(|a| a.pmi.unwrap()).collect();
                Some(macro_micro(&values, &sizes)?.0)
            } else {
                None
            };
            let recommended_values: Vec<f64> = list
                .iter()
                .map(|a| a.get(recommended).copied().unwrap_or(f64::NAN))
                .collect();
            if recommended_values.iter().all(|v| v.is_finite()) {
                micro_cf = Some(macro_micro(&recommended_values, &sizes)?.1);
            }
            Some(PerScheme {
                none: one(|a| a.none)?,
                token: one(|a| a.token)?,
                char: one(|a| a.char)?,
                pmi,
            })
        }
        None => None,
    };
    let mut micro_mcf = None;
    let mcf_accuracy = match mcf_accs {
        Some(list) => {
            let (macro_avg, micro_avg) = macro_micro(&list, &sizes)?;
            micro_mcf = Some(micro_avg);
            Some(macro_avg)
        }
        None => None,
    };
    finish_task_result(
        task_id,
        recommended,
        n_total,
        cf_accuracy,
        mcf_accuracy,
        micro_cf,
        micro_mcf,
        subtasks,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_task_result(
    task_id: &str,
    recommended: Normalization,
    n: usize,
    cf_accuracy: Option<PerScheme<f64>>,
    mcf_accuracy: Option<f64>,
    micro_cf_accuracy: Option<f64>,
    micro_mcf_accuracy: Option<f64>,
    subtasks: Vec<SubtaskResult>,
) -> Result<TaskResult> {
    let cf_recommended = cf_accuracy
        .as_ref()
        .and_then(|a| a.get(recommended).copied());
    if cf_accuracy.is_some() && cf_recommended.is_none() {
        return Err(Error::Report(format!(
            "task '{task_id}': recommended scheme {} was not computed",
            recommended.name()
        )));
    }
    let (final_score, chosen_formulation) = match (cf_recommended, mcf_accuracy) {
        (Some(cf), Some(mcf)) => best_of_score(cf, mcf),
        (Some(cf), None) => (cf, Formulation::Cf),
        (None, Some(mcf)) => (mcf, Formulation::Mcf),
        (None, None) => {
            return Err(Error::Report(format!(
                "task '{task_id}' produced neither formulation"
            )))
        }
    };
    Ok(TaskResult {
        task_id: task_id.to_owned(),
        n_evaluated: n,
        recommended_scheme: recommended,
        cf_std_err: match cf_recommended {
            Some(acc) => Some(std_err(acc, n)?),
            None => None,
        },
        mcf_std_err: match mcf_accuracy {
            Some(acc) => Some(std_err(acc, n)?),
            None => None,
        },
        final_std_err: std_err(final_score, n)?,
        cf_accuracy,
        mcf_accuracy,
        final_score,
        chosen_formulation,
        micro_cf_accuracy,
        micro_mcf_accuracy,
        subtasks,
    })
}

/// Assemble the suite report for one model from per-leaf-task results,
/// grouping subtasks under their parent in suite order.
pub fn build_suite_report(
    model: &str,
    suite: &TaskSuite,
    per_task: &BTreeMap<String, Vec<InstanceResult>>,
    provenance: Provenance,
) -> Result<SuiteReport> {
    let mut tasks = Vec::new();
    for spec in suite.top_level() {
        let children: Vec<&crate::tasks::TaskSpec> = suite.subtasks_of(&spec.task_id).collect();
        if children.is_empty() {
            let Some(results) = per_task.get(&spec.task_id) else {
                continue;
            };
            tasks.push(task_result(&spec.task_id, spec.cf_normalization, results)?);
        } else {
            let mut grouped = Vec::new();
            for child in children {
                if let Some(results) = per_task.get(&child.task_id) {
                    grouped.push((child.task_id.clone(), results.clone()));
                }
            }
            if grouped.is_empty() {
                continue;
            }
            tasks.push(grouped_task_result(
                &spec.task_id,
                spec.cf_normalization,
                &grouped,
            )?);
        }
    }
    if tasks.is_empty() {
        return Err(Error::Report("no task produced results".into()));
    }
    let suite_average = tasks.iter().map(|t| t.final_score).sum::<f64>() / tasks.len() as f64;
    Ok(SuiteReport {
        model: model.to_owned(),
        tasks,
        suite_average,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::{CfResult, McfResult, PredictionRecord};

    fn record(task_id: &str, row: usize, cf_correct: bool, mcf_correct: bool) -> InstanceResult {
        let pred = |correct: bool| PredictionRecord {
            index: usize::from(!correct),
            tie: false,
            near_tie: false,
            correct,
        };
        InstanceResult {
            task_id: task_id.into(),
            source_row: row,
            gold: 0,
            num_choices: 2,
            cf: Some(CfResult {
                raw: vec![-1.0, -2.0],
                token_counts: vec![1, 1],
                char_counts: vec![2, 2],
                unconditional: None,
                scores: PerScheme {
                    none: vec![-1.0, -2.0],
                    token: vec![-1.0, -2.0],
                    char: vec![-0.5, -1.0],
                    pmi: None,
                },
                prediction: PerScheme {
                    none: pred(cf_correct),
                    token: pred(cf_correct),
                    char: pred(cf_correct),
                    pmi: None,
                },
            }),
            mcf: Some(McfResult {
                label_logprobs: vec![-1.0, -2.0],
                prediction: pred(mcf_correct),
            }),
        }
    }

    #[test]
    fn accuracy_counts_correct_fraction() {
        let results: Vec<InstanceResult> = (0..4).map(|i| record("toy", i, i == 0, true)).collect();
        assert_eq!(
            task_accuracy(&results, Formulation::Cf, Some(Normalization::None)).unwrap(),
            0.25
        );
        assert_eq!(
            task_accuracy(&results, Formulation::Mcf, None).unwrap(),
            1.0
        );
        assert!(task_accuracy(&[], Formulation::Mcf, None).is_err());
    }

    #[test]
    fn task_result_picks_best_formulation() {
        let results: Vec<InstanceResult> =
            (0..10).map(|i| record("toy", i, i < 3, i < 8)).collect();
        let tr = task_result("toy", Normalization::None, &results).unwrap();
        assert_eq!(tr.final_score, 0.8);
        assert_eq!(tr.chosen_formulation, Formulation::Mcf);
        assert_eq!(tr.n_evaluated, 10);
    }

    #[test]
    fn emit_is_deterministic() {
        let results: Vec<InstanceResult> = (0..5).map(|i| record("toy", i, true, false)).collect();
        let tr = task_result("toy", Normalization::None, &results).unwrap();
        let report = SuiteReport {
            model: "m".into(),
            suite_average: tr.final_score,
            tasks: vec![tr],
            provenance: Provenance {
                harness_version: "0".into(),
                config_hash: "h".into(),
                fixture_hashes: BTreeMap::new(),
                backend: crate::backend::BackendIdentity {
                    model_name: "m".into(),
                    add_bos: false,
                },
            },
        };
        for format in [
            ReportFormat::Json,
            ReportFormat::Markdown,
            ReportFormat::Csv,
        ] {
            assert_eq!(
                emit_report(&report, format).unwrap(),
                emit_report(&report, format).unwrap()
            );
        }
        assert!(matches!(ReportFormat::parse("xml"), Err(Error::Report(_))));
    }

    #[test]
    fn mcf_winner_carries_marker() {
        let results: Vec<InstanceResult> = (0..5).map(|i| record("toy", i, false, true)).collect();
        let tr = task_result("toy", Normalization::None, &results).unwrap();
        let report = SuiteReport {
            model: "m".into(),
            suite_average: tr.final_score,
            tasks: vec![tr],
            provenance: Provenance {
                harness_version: "0".into(),
                config_hash: "h".into(),
                fixture_hashes: BTreeMap::new(),
                backend: crate::backend::BackendIdentity {
                    model_name: "m".into(),
                    add_bos: false,
                },
            },
        };
        let md = String::from_utf8(emit_report(&report, ReportFormat::Markdown).unwrap()).unwrap();
        assert!(md.contains(&format!("100.0{MCF_MARKER}")));
    }

    #[test]
    fn results_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.jsonl");
        let results: Vec<InstanceResult> = (0..3).map(|i| record("toy", i, true, false)).collect();
        write_results(&path, &results).unwrap();
        let back = read_results(&path).unwrap();
        assert_eq!(results, back);
    }
}
