//! Cross-model normalization analysis: per-task win percentages and the gap
//! between the recommended scheme and the per-model best.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};

use mceval_core::{
    diff_oracle, read_results, scheme_accuracies, task_accuracy, win_percentage, Formulation,
    InstanceResult, Normalization, PerScheme, STANDARD_TASKS,
};

use crate::AnalyzeArgs;

const SCHEMES: [Normalization; 4] = [
    Normalization::None,
    Normalization::Char,
    Normalization::Token,
    Normalization::Pmi,
];

fn recommended_for(task_id: &str) -> Option<Normalization> {
    if task_id.starts_with("mmlu") {
        return Some(Normalization::Char);
    }
    STANDARD_TASKS
        .iter()
        .find(|row| row.task_id == task_id)
        .map(|row| row.cf_normalization)
}

#[derive(serde::Serialize)]
struct ModelRow {
    model: String,
    accuracies: Vec<f64>,
    mcf_accuracy: Option<f64>,
    diff_oracle: Option<f64>,
}

#[derive(serde::Serialize)]
struct TaskAnalysis {
    task_id: String,
    schemes: Vec<String>,
    recommended: Option<String>,
    rows: Vec<ModelRow>,
    win_percentage: Vec<f64>,
}

fn columns(acc: &PerScheme<f64>) -> Option<Vec<f64>> {
    let pmi = acc.pmi?;
    Some(vec![acc.none, acc.char, acc.token, pmi])
}

pub fn run(args: AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let mut per_model: Vec<(String, BTreeMap<String, Vec<InstanceResult>>)> = Vec::new();
    for input in &args.inputs {
        let (name, path) = input
            .split_once('=')
            .with_context(|| format!("--input expects NAME=PATH, got '{input}'"))?;
        let results = read_results(path.as_ref())?;
        let mut by_task: BTreeMap<String, Vec<InstanceResult>> = BTreeMap::new();
        for record in results {
            by_task
                .entry(record.task_id.clone())
                .or_default()
                .push(record);
        }
        per_model.push((name.to_owned(), by_task));
    }

    let mut task_ids: Vec<String> = Vec::new();
    for (_, by_task) in &per_model {
        for task_id in by_task.keys() {
            if !task_ids.contains(task_id) {
                task_ids.push(task_id.clone());
            }
        }
    }

    let mut analyses = Vec::new();
    for task_id in task_ids {
        let recommended = recommended_for(&task_id);
        let mut rows = Vec::new();
        let mut matrix = Vec::new();
        for (model, by_task) in &per_model {
            let Some(results) = by_task.get(&task_id) else {
                continue;
            };
            let Some(acc) = scheme_accuracies(results)? else {
                continue;
            };
            let Some(cols) = columns(&acc) else {
                bail!(
                    "{model}/{task_id}: pmi accuracy missing; run eval with --analyze-norms to \
                     gather all four schemes"
                );
            };
            let diff = match recommended.and_then(|r| acc.get(r).copied()) {
                Some(rec_acc) => Some(diff_oracle(
                    rec_acc * 100.0,
                    &cols.iter().map(|c| c * 100.0).collect::<Vec<_>>(),
                )?),
                None => None,
            };
            let mcf = if results.iter().all(|r| r.mcf.is_some()) {
                Some(task_accuracy(results, Formulation::Mcf, None)?)
            } else {
                None
            };
            rows.push(ModelRow {
                model: model.clone(),
                accuracies: cols.clone(),
                mcf_accuracy: mcf,
                diff_oracle: diff,
            });
            matrix.push(cols);
        }
        if matrix.is_empty() {
            continue;
        }
        analyses.push(TaskAnalysis {
            task_id,
            schemes: SCHEMES.iter().map(|s| s.name().to_owned()).collect(),
            recommended: recommended.map(|r| r.name().to_owned()),
            win_percentage: win_percentage(&matrix)?,
            rows,
        });
    }
    if analyses.is_empty() {
        bail!("no analyzable tasks found in the given results files");
    }

    let output = match args.format.as_str() {
        "json" => {
            let mut bytes = serde_json::to_string_pretty(&analyses)?;
            bytes.push('\n');
            bytes
        }
        "md" | "markdown" => markdown(&analyses),
        other => bail!("unknown analyze format '{other}' (expected md or json)"),
    };
    match &args.output {
        Some(path) => std::fs::write(path, output)?,
        None => print!("{output}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn markdown(analyses: &[TaskAnalysis]) -> String {
    let mut out = String::new();
    for analysis in analyses {
        let _ = writeln!(out, "## {}", analysis.task_id);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "| model | none | char | token | pmi | mcf | oracle gap |"
        );
        let _ = writeln!(out, "|---|---|---|---|---|---|---|");
        for row in &analysis.rows {
            let mcf = row
                .mcf_accuracy
                .map(|a| format!("{:.1}", a * 100.0))
                .unwrap_or_else(|| "-".into());
            let diff = row
                .diff_oracle
                .map(|d| format!("{d:.1}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "| {} | {:.1} | {:.1} | {:.1} | {:.1} | {} | {} |",
                row.model,
                row.accuracies[0] * 100.0,
                row.accuracies[1] * 100.0,
                row.accuracies[2] * 100.0,
                row.accuracies[3] * 100.0,
                mcf,
                diff,
            );
        }
        let wins = analysis
            .win_percentage
            .iter()
            .zip(&analysis.schemes)
            .map(|(pct, scheme)| format!("{scheme} {pct:.1}"))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "win percentage: {wins}; recommended: {}",
            analysis.recommended.as_deref().unwrap_or("-")
        );
        let _ = writeln!(out);
    }
    out
}
