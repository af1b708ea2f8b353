//! Task definitions, bundled-data ingestion, and evaluation-set selection.
//!
//! A task suite is loaded from a versioned JSON config whose entries name the
//! split, instance totals, sampling cap, choice count, cloze normalization,
//! prompt templates, and the instance/shot files (paths relative to the
//! config). The standard ten-task suite ships under `data/`; strict mode
//! refuses configs that deviate from it.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::Mt19937;

/// Seed used for every per-task instance selection.
pub const SAMPLE_SEED: u64 = 1234;
/// Populations larger than this are sampled down to the task's `eval_cap`.
pub const SAMPLE_THRESHOLD: usize = 1500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Test,
    Validation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    None,
    Token,
    Char,
    Pmi,
}

impl Normalization {
    pub const ALL: [Normalization; 4] = [
        Normalization::None,
        Normalization::Token,
        Normalization::Char,
        Normalization::Pmi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Normalization::None => "none",
            Normalization::Token => "token",
            Normalization::Char => "char",
            Normalization::Pmi => "pmi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptStyle {
    /// Question (optionally preceded by a passage) answered after "Answer:".
    Qa,
    /// Running text scored by its most natural continuation; no affixes in CF.
    Continuation,
    /// Sentence with a blank; CF varies the context and shares the continuation.
    BlankFill,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumChoices {
    Fixed(usize),
    Variable,
}

impl Serialize for NumChoices {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NumChoices::Fixed(n) => s.serialize_u64(*n as u64),
            NumChoices::Variable => s.serialize_str("variable"),
        }
    }
}

impl<'de> Deserialize<'de> for NumChoices {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(n) => Ok(NumChoices::Fixed(n as usize)),
            Raw::Tag(t) if t == "variable" => Ok(NumChoices::Variable),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!(
                "num_choices must be a count or \"variable\", got \"{t}\""
            ))),
        }
    }
}

/// How source-record keys map onto the harness instance slots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldMap {
    pub question: Option<String>,
    pub context: Option<ContextMap>,
    pub choices: String,
    pub gold: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ContextMap {
    Key { key: String },
    Parts { parts: Vec<String>, sep: String },
}

/// Prompt-shaping parameters for both formulations.
///
/// Option lines are always rendered as `"\n {LETTER}. {choice}"` with letters
/// ascending in choice order; the leading space keeps the label token
/// identical to the answer token under common tokenizers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormulationTemplate {
    pub style: PromptStyle,
    pub question_prefix: String,
    pub answer_suffix: String,
    pub mcf_lead_in: Option<String>,
    pub cf_strip_affixes: bool,
}

/// One benchmark task's full standardized configuration.
#[derive(Debug, Clone)]
pub struct TaskSpec {
    pub task_id: String,
    pub split: Split,
    pub total_instances: usize,
    pub eval_cap: Option<usize>,
    pub num_choices: NumChoices,
    pub cf_normalization: Normalization,
    pub templates: FormulationTemplate,
    pub instruction: Option<String>,
    pub shots: Vec<FewShotExample>,
    pub subtask_of: Option<String>,
    pub field_map: FieldMap,
    pub instances_path: Option<PathBuf>,
    pub shots_path: Option<PathBuf>,
}

impl TaskSpec {
    /// True for specs that carry their own instance file (the MMLU parent
    /// entry is a grouping node and is not evaluated directly).
    pub fn is_leaf(&self) -> bool {
        self.instances_path.is_some()
    }
}

/// One question with choices, gold index, and source-row provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub source_row: usize,
    pub question: Option<String>,
    pub context: Option<String>,
    pub choices: Vec<String>,
    pub gold: usize,
}

/// A curated in-context example: instance content plus the gold answer text
/// and the split it was drawn from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FewShotExample {
    pub instance: Instance,
    pub gold_text: String,
    pub split: String,
}

/// The loaded suite: a flat spec list where subtasks follow their parent.
#[derive(Debug, Clone)]
pub struct TaskSuite {
    pub specs: Vec<TaskSpec>,
}

impl TaskSuite {
    pub fn top_level(&self) -> impl Iterator<Item = &TaskSpec> {
        self.specs.iter().filter(|s| s.subtask_of.is_none())
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TaskSpec> {
        self.specs.iter().filter(|s| s.is_leaf())
    }

    pub fn subtasks_of<'a>(&'a self, parent: &'a str) -> impl Iterator<Item = &'a TaskSpec> {
        self.specs
            .iter()
            .filter(move |s| s.subtask_of.as_deref() == Some(parent))
    }

    pub fn get(&self, task_id: &str) -> Option<&TaskSpec> {
        self.specs.iter().find(|s| s.task_id == task_id)
    }

    pub fn top_level_ids(&self) -> Vec<String> {
        self.top_level().map(|s| s.task_id.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Config file schema.

#[derive(Debug, Deserialize)]
struct ConfigFile {
    version: u32,
    tasks: Vec<ConfigEntry>,
}

#[derive(Debug, Deserialize)]
struct ConfigEntry {
    task_id: String,
    split: Split,
    total_instances: usize,
    eval_cap: Option<usize>,
    num_choices: NumChoices,
    cf_normalization: Normalization,
    style: PromptStyle,
    question_prefix: String,
    answer_suffix: String,
    mcf_lead_in: Option<String>,
    cf_strip_affixes: bool,
    instruction: Option<String>,
    instances: Option<String>,
    shots: Option<String>,
    field_map: FieldMap,
    #[serde(default)]
    subtasks: Vec<ConfigEntry>,
}

/// Reference settings for one standard task; `num_choices: None` means the
/// choice count varies per instance.
pub struct StandardTask {
    pub task_id: &'static str,
    pub split: Split,
    pub total_instances: usize,
    pub eval_cap: Option<usize>,
    pub num_choices: Option<usize>,
    pub cf_normalization: Normalization,
}

const fn std_task(
    task_id: &'static str,
    split: Split,
    total_instances: usize,
    eval_cap: Option<usize>,
    num_choices: Option<usize>,
    cf_normalization: Normalization,
) -> StandardTask {
    StandardTask {
        task_id,
        split,
        total_instances,
        eval_cap,
        num_choices,
        cf_normalization,
    }
}

/// The ten standard tasks with their splits, totals, sampling caps, choice
/// counts, and recommended normalizations.
pub const STANDARD_TASKS: [StandardTask; 10] = [
    std_task(
        "arc_challenge",
        Split::Test,
        1172,
        None,
        None,
        Normalization::Pmi,
    ),
    std_task(
        "arc_easy",
        Split::Test,
        2376,
        Some(1000),
        None,
        Normalization::Char,
    ),
    std_task(
        "boolq",
        Split::Validation,
        3270,
        Some(1000),
        Some(2),
        Normalization::None,
    ),
    std_task(
        "csqa",
        Split::Validation,
        1221,
        None,
        Some(5),
        Normalization::Pmi,
    ),
    std_task(
        "hellaswag",
        Split::Validation,
        10042,
        Some(1000),
        Some(4),
        Normalization::Char,
    ),
    std_task(
        "mmlu",
        Split::Test,
        14042,
        None,
        Some(4),
        Normalization::Char,
    ),
    std_task("obqa", Split::Test, 500, None, Some(4), Normalization::Pmi),
    std_task(
        "piqa",
        Split::Validation,
        1838,
        Some(1000),
        Some(2),
        Normalization::Char,
    ),
    std_task(
        "siqa",
        Split::Validation,
        1954,
        Some(1000),
        Some(3),
        Normalization::Char,
    ),
    std_task(
        "winogrande",
        Split::Validation,
        1267,
        None,
        Some(2),
        Normalization::None,
    ),
];

/// Short display names used in report tables.
pub fn display_name(task_id: &str) -> &str {
    match task_id {
        "arc_challenge" => "ARC_C",
        "arc_easy" => "ARC_E",
        "boolq" => "BoolQ",
        "csqa" => "CSQA",
        "hellaswag" => "HSwag",
        "mmlu" => "MMLU",
        "obqa" => "OBQA",
        "piqa" => "PIQA",
        "siqa" => "SIQA",
        "winogrande" => "WinoG",
        other => other,
    }
}

/// Load and validate a task suite from a config file.
///
/// With `strict` set, the config must match the built-in standard table
/// exactly (task ids, splits, totals, caps, choice counts, normalizations);
/// deviations and unknown task ids are rejected.
pub fn load_task_suite(config_path: &Path, strict: bool) -> Result<TaskSuite> {
    let text = fs::read_to_string(config_path).map_err(|e| Error::Io {
        path: config_path.to_path_buf(),
        source: e,
    })?;
    let config: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", config_path.display())))?;
    if config.version != 1 {
        return Err(Error::Config(format!(
            "unsupported config version {} (expected 1)",
            config.version
        )));
    }
    if config.tasks.is_empty() {
        return Err(Error::NoTasksDefined);
    }
    let base = config_path.parent().unwrap_or_else(|| Path::new("."));

    let mut specs = Vec::new();
    let mut seen = HashSet::new();
    for entry in &config.tasks {
        push_specs(entry, None, base, strict, &mut seen, &mut specs)?;
    }
    if strict {
        validate_standard(&specs)?;
    }
    Ok(TaskSuite { specs })
}

fn push_specs(
    entry: &ConfigEntry,
    parent: Option<&str>,
    base: &Path,
    strict: bool,
    seen: &mut HashSet<String>,
    out: &mut Vec<TaskSpec>,
) -> Result<()> {
    if !seen.insert(entry.task_id.clone()) {
        return Err(Error::DuplicateTaskId(entry.task_id.clone()));
    }
    if parent.is_some() && !entry.subtasks.is_empty() {
        return Err(Error::Config(format!(
            "task '{}': subtasks may not nest further",
            entry.task_id
        )));
    }
    let is_group = !entry.subtasks.is_empty();
    let shots = match (&entry.shots, is_group) {
        (Some(rel), _) => load_shots(&base.join(rel), &entry.task_id, &entry.field_map, strict)?,
        (None, true) => Vec::new(),
        (None, false) => {
            return Err(Error::Config(format!(
                "task '{}': missing shots file",
                entry.task_id
            )))
        }
    };
    if !is_group && entry.instances.is_none() {
        return Err(Error::Config(format!(
            "task '{}': missing instances file",
            entry.task_id
        )));
    }

    out.push(TaskSpec {
        task_id: entry.task_id.clone(),
        split: entry.split,
        total_instances: entry.total_instances,
        eval_cap: entry.eval_cap,
        num_choices: entry.num_choices,
        cf_normalization: entry.cf_normalization,
        templates: FormulationTemplate {
            style: entry.style,
            question_prefix: entry.question_prefix.clone(),
            answer_suffix: entry.answer_suffix.clone(),
            mcf_lead_in: entry.mcf_lead_in.clone(),
            cf_strip_affixes: entry.cf_strip_affixes,
        },
        instruction: entry.instruction.clone(),
        shots,
        subtask_of: parent.map(str::to_owned),
        field_map: entry.field_map.clone(),
        instances_path: entry.instances.as_ref().map(|rel| base.join(rel)),
        shots_path: entry.shots.as_ref().map(|rel| base.join(rel)),
    });
    for sub in &entry.subtasks {
        push_specs(sub, Some(&entry.task_id), base, strict, seen, out)?;
    }
    Ok(())
}

fn validate_standard(specs: &[TaskSpec]) -> Result<()> {
    let nonstandard = |task_id: &str, detail: String| Error::Nonstandard {
        task_id: task_id.to_owned(),
        detail,
    };
    for spec in specs.iter().filter(|s| s.subtask_of.is_none()) {
        let Some(std_row) = STANDARD_TASKS
            .iter()
            .find(|row| row.task_id == spec.task_id)
        else {
            return Err(nonstandard(&spec.task_id, "not a standard task id".into()));
        };
        if spec.split != std_row.split {
            return Err(nonstandard(
                &spec.task_id,
                format!("split {:?}", spec.split),
            ));
        }
        if spec.total_instances != std_row.total_instances {
            return Err(nonstandard(
                &spec.task_id,
                format!(
                    "total_instances {} (standard {})",
                    spec.total_instances, std_row.total_instances
                ),
            ));
        }
        if spec.eval_cap != std_row.eval_cap {
            return Err(nonstandard(
                &spec.task_id,
                format!(
                    "eval_cap {:?} (standard {:?})",
                    spec.eval_cap, std_row.eval_cap
                ),
            ));
        }
        let expect_choices = match std_row.num_choices {
            Some(n) => NumChoices::Fixed(n),
            None => NumChoices::Variable,
        };
        if spec.num_choices != expect_choices {
            return Err(nonstandard(&spec.task_id, "choice count".into()));
        }
        if spec.cf_normalization != std_row.cf_normalization {
            return Err(nonstandard(
                &spec.task_id,
                format!(
                    "cf_normalization {} (standard {})",
                    spec.cf_normalization.name(),
                    std_row.cf_normalization.name()
                ),
            ));
        }
        // Caps accompany populations above the sampling threshold. Subtask
        // groups are exempt: their parent row defines the full-set policy.
        let capped = spec.eval_cap.is_some();
        let over = spec.total_instances > SAMPLE_THRESHOLD;
        let is_group = specs
            .iter()
            .any(|s| s.subtask_of.as_deref() == Some(spec.task_id.as_str()));
        if !is_group && capped != over {
            return Err(nonstandard(
                &spec.task_id,
                format!("eval_cap must be present iff total_instances > {SAMPLE_THRESHOLD}"),
            ));
        }
    }
    for expected in STANDARD_TASKS.iter().map(|row| row.task_id) {
        if !specs.iter().any(|s| s.task_id == expected) {
            return Err(Error::Config(format!("standard task '{expected}' missing")));
        }
    }
    let mmlu_subs: Vec<_> = specs
        .iter()
        .filter(|s| s.subtask_of.as_deref() == Some("mmlu"))
        .collect();
    if mmlu_subs.len() != 57 {
        return Err(Error::Config(format!(
            "mmlu must expand to 57 subtasks, got {}",
            mmlu_subs.len()
        )));
    }
    let sum: usize = mmlu_subs.iter().map(|s| s.total_instances).sum();
    if sum != 14042 {
        return Err(Error::Config(format!(
            "mmlu subtask totals sum to {sum}, expected 14042"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Instance and shot ingestion.

fn record_str(value: &serde_json::Value, key: &str, path: &Path, line: usize) -> Result<String> {
    value
        .get(key)
        .and_then(|v| v.as_str())
        .map(str::to_owned)
        .ok_or_else(|| Error::Data {
            path: path.to_path_buf(),
            line,
            detail: format!("missing or non-string field '{key}'"),
        })
}

fn record_to_instance(
    value: &serde_json::Value,
    map: &FieldMap,
    source_row: usize,
    path: &Path,
    line: usize,
) -> Result<Instance> {
    let data_err = |detail: String| Error::Data {
        path: path.to_path_buf(),
        line,
        detail,
    };
    let question = match &map.question {
        Some(key) => Some(record_str(value, key, path, line)?),
        None => None,
    };
    let context = match &map.context {
        Some(ContextMap::Key { key }) => Some(record_str(value, key, path, line)?),
        Some(ContextMap::Parts { parts, sep }) => {
            let mut rendered = Vec::with_capacity(parts.len());
            for key in parts {
                rendered.push(record_str(value, key, path, line)?);
            }
            Some(rendered.join(sep))
        }
        None => None,
    };
    let choices = value
        .get(&map.choices)
        .and_then(|v| v.as_array())
        .ok_or_else(|| data_err(format!("missing choices field '{}'", map.choices)))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| data_err("non-string choice".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    if choices.is_empty() {
        return Err(data_err("empty choices list".into()));
    }
    let gold = value
        .get(&map.gold)
        .and_then(|v| v.as_u64())
        .ok_or_else(|| data_err(format!("missing gold field '{}'", map.gold)))?
        as usize;
    if gold >= choices.len() {
        return Err(data_err(format!(
            "gold index {gold} out of range for {} choices",
            choices.len()
        )));
    }
    Ok(Instance {
        source_row,
        question,
        context,
        choices,
        gold,
    })
}

fn parse_lines(path: &Path) -> Result<Vec<(usize, serde_json::Value)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| Error::Data {
            path: path.to_path_buf(),
            line: idx + 1,
            detail: format!("malformed record: {e}"),
        })?;
        records.push((idx, value));
    }
    Ok(records)
}

/// Load a task's instances in source order; `source_row` is the 0-based line
/// index. The record count must match the configured total, and fixed-choice
/// tasks must present exactly the declared number of choices.
pub fn load_instances(task: &TaskSpec) -> Result<Vec<Instance>> {
    let path = task
        .instances_path
        .as_ref()
        .ok_or_else(|| Error::Config(format!("task '{}' has no instance file", task.task_id)))?;
    let mut instances = Vec::new();
    for (idx, value) in parse_lines(path)? {
        let inst = record_to_instance(&value, &task.field_map, instances.len(), path, idx + 1)?;
        if let NumChoices::Fixed(n) = task.num_choices {
            if inst.choices.len() != n {
                return Err(Error::Data {
                    path: path.clone(),
                    line: idx + 1,
                    detail: format!("expected {n} choices, found {}", inst.choices.len()),
                });
            }
        }
        instances.push(inst);
    }
    if instances.len() != task.total_instances {
        return Err(Error::Config(format!(
            "task '{}': instance file has {} records, config declares {}",
            task.task_id,
            instances.len(),
            task.total_instances
        )));
    }
    Ok(instances)
}

fn load_shots(
    path: &Path,
    task_id: &str,
    map: &FieldMap,
    strict: bool,
) -> Result<Vec<FewShotExample>> {
    let mut shots = Vec::new();
    for (idx, value) in parse_lines(path)? {
        // Shot records share the instance schema; gold text is implied by the
        // gold index, and split provenance is recorded alongside.
        let instance = record_to_instance(&value, map, shots.len(), path, idx + 1)?;
        let split = value
            .get("split")
            .and_then(|v| v.as_str())
            .unwrap_or("")
            .to_owned();
        if strict && split != "train" {
            return Err(Error::Data {
                path: path.to_path_buf(),
                line: idx + 1,
                detail: "shot does not record train-split provenance".into(),
            });
        }
        let gold_text = instance.choices[instance.gold].clone();
        shots.push(FewShotExample {
            instance,
            gold_text,
            split,
        });
    }
    if shots.len() != 5 {
        return Err(Error::Config(format!(
            "task '{task_id}': shots file must contain exactly 5 examples, found {}",
            shots.len()
        )));
    }
    let first = shots[0].instance.gold;
    if shots.iter().all(|s| s.instance.gold == first) {
        return Err(Error::Config(format!(
            "task '{task_id}': shot gold labels are all identical"
        )));
    }
    Ok(shots)
}

/// Apply the standard selection policy: populations of at most
/// [`SAMPLE_THRESHOLD`] pass through in source order; larger populations are
/// sampled down to `eval_cap` with a fresh seed-1234 generator, and the
/// output keeps the sampler's emission order.
pub fn select_eval_instances(instances: &[Instance], task: &TaskSpec) -> Result<Vec<Instance>> {
    let cap = match task.eval_cap {
        Some(cap) if instances.len() > SAMPLE_THRESHOLD => cap,
        _ => return Ok(instances.to_vec()),
    };
    let mut rng = Mt19937::seeded(SAMPLE_SEED);
    let indices = rng.sample_indices(instances.len(), cap)?;
    Ok(indices.into_iter().map(|i| instances[i].clone()).collect())
}
