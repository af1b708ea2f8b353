//! Byte-exact prompt construction for both formulations.
//!
//! CF scores each answer string as a continuation of the question prompt;
//! MCF lists lettered options and scores the label tokens. Answer
//! continuations and option labels always begin with a single space so the
//! scored token matches the in-prompt token under common tokenizers.
//! Rendering is pure: identical inputs produce identical bytes ("\n"
//! newlines, UTF-8) on every platform.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hash::fnv1a64;
use crate::tasks::{FewShotExample, Instance, PromptStyle, TaskSpec};

pub const CONTEXT_WINDOW: usize = 2048;
const LETTERS: [char; 26] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S',
    'T', 'U', 'V', 'W', 'X', 'Y', 'Z',
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequestRole {
    CfChoice,
    McfLabel,
    Unconditional,
}

/// A (context, continuation) pair sent to a scoring backend.
#[derive(Debug, Clone)]
pub struct ScoreRequest {
    /// Stable content hash of `context \x1f continuation`; identical pairs
    /// share an id and may be deduplicated.
    pub request_id: String,
    pub context: Arc<str>,
    pub continuation: String,
    pub role: RequestRole,
    pub choice_index: usize,
    pub task_id: String,
    pub source_row: usize,
}

pub fn request_id(context: &str, continuation: &str) -> String {
    let mut bytes = Vec::with_capacity(context.len() + continuation.len() + 1);
    bytes.extend_from_slice(context.as_bytes());
    bytes.push(0x1f);
    bytes.extend_from_slice(continuation.as_bytes());
    format!("{:016x}", fnv1a64(&bytes))
}

impl ScoreRequest {
    fn new(
        context: Arc<str>,
        continuation: String,
        role: RequestRole,
        choice_index: usize,
        task: &TaskSpec,
        source_row: usize,
    ) -> Result<Self> {
        let render_err = |detail: String| Error::Render {
            task_id: task.task_id.clone(),
            source_row,
            detail,
        };
        if continuation.is_empty() {
            return Err(render_err(format!(
                "empty continuation for choice {choice_index}"
            )));
        }
        match role {
            RequestRole::McfLabel => {
                if continuation.len() != 2 || !continuation.starts_with(' ') {
                    return Err(render_err(format!(
                        "label continuation must be \" <LETTER>\", got {continuation:?}"
                    )));
                }
            }
            RequestRole::CfChoice | RequestRole::Unconditional => {
                if !continuation.starts_with(' ') {
                    return Err(render_err(format!(
                        "continuation must start with one space, got {continuation:?}"
                    )));
                }
                if continuation.len() < 2 {
                    return Err(render_err(format!(
                        "missing choice text for choice {choice_index}"
                    )));
                }
            }
        }
        Ok(ScoreRequest {
            request_id: request_id(&context, &continuation),
            context,
            continuation,
            role,
            choice_index,
            task_id: task.task_id.clone(),
            source_row,
        })
    }
}

/// Structured prompt: optional instruction line, rendered shots, and the
/// query block. Joining uses two newlines between every part.
#[derive(Debug, Clone)]
pub struct PromptParts {
    pub instruction: Option<String>,
    pub shots: Vec<String>,
    pub query: String,
}

impl PromptParts {
    pub fn join(&self) -> String {
        let mut pieces: Vec<&str> = Vec::with_capacity(self.shots.len() + 2);
        if let Some(instr) = &self.instruction {
            pieces.push(instr);
        }
        for shot in &self.shots {
            pieces.push(shot);
        }
        pieces.push(&self.query);
        pieces.join("\n\n")
    }

    fn without_earliest_shots(&self, drop: usize) -> PromptParts {
        PromptParts {
            instruction: self.instruction.clone(),
            shots: self.shots[drop.min(self.shots.len())..].to_vec(),
            query: self.query.clone(),
        }
    }
}

fn letter(index: usize, task: &TaskSpec, source_row: usize) -> Result<char> {
    LETTERS.get(index).copied().ok_or_else(|| Error::Render {
        task_id: task.task_id.clone(),
        source_row,
        detail: format!("more than {} choices", LETTERS.len()),
    })
}

/// `"\n A. <c0>\n B. <c1>..."` with letters ascending in choice order.
fn options_block(task: &TaskSpec, choices: &[String], source_row: usize) -> Result<String> {
    let mut block = String::new();
    for (i, choice) in choices.iter().enumerate() {
        block.push('\n');
        block.push(' ');
        block.push(letter(i, task, source_row)?);
        block.push_str(". ");
        block.push_str(choice);
    }
    Ok(block)
}

fn question_text<'a>(task: &TaskSpec, inst: &'a Instance) -> Result<&'a str> {
    inst.question.as_deref().ok_or_else(|| Error::Render {
        task_id: task.task_id.clone(),
        source_row: inst.source_row,
        detail: "instance has no question text".into(),
    })
}

fn context_text<'a>(task: &TaskSpec, inst: &'a Instance) -> Result<&'a str> {
    inst.context.as_deref().ok_or_else(|| Error::Render {
        task_id: task.task_id.clone(),
        source_row: inst.source_row,
        detail: "instance has no context text".into(),
    })
}

/// Split a blank-fill sentence at its first run of underscores.
fn split_blank<'a>(
    task: &TaskSpec,
    inst: &Instance,
    sentence: &'a str,
) -> Result<(&'a str, &'a str)> {
    let start = sentence.find('_').ok_or_else(|| Error::Render {
        task_id: task.task_id.clone(),
        source_row: inst.source_row,
        detail: "sentence lacks a blank marker".into(),
    })?;
    let end = sentence[start..]
        .find(|c| c != '_')
        .map(|off| start + off)
        .unwrap_or(sentence.len());
    Ok((&sentence[..start], &sentence[end..]))
}

/// CF query context (the block the answer string completes).
fn cf_query(task: &TaskSpec, inst: &Instance) -> Result<String> {
    let t = &task.templates;
    match t.style {
        PromptStyle::Qa => {
            let mut out = String::new();
            if let Some(ctx) = &inst.context {
                out.push_str(ctx);
                out.push('\n');
            }
            out.push_str(&t.question_prefix);
            out.push_str(question_text(task, inst)?);
            out.push('\n');
            out.push_str(&t.answer_suffix);
            Ok(out)
        }
        PromptStyle::Continuation => Ok(context_text(task, inst)?.to_owned()),
        PromptStyle::BlankFill => Err(Error::Render {
            task_id: task.task_id.clone(),
            source_row: inst.source_row,
            detail: "blank-fill tasks render per-choice CF contexts".into(),
        }),
    }
}

/// MCF query context: options block then the answer suffix.
fn mcf_query(task: &TaskSpec, inst: &Instance) -> Result<String> {
    let t = &task.templates;
    let options = options_block(task, &inst.choices, inst.source_row)?;
    let mut out = String::new();
    match t.style {
        PromptStyle::Qa => {
            if let Some(ctx) = &inst.context {
                out.push_str(ctx);
                out.push('\n');
            }
            out.push_str(&t.question_prefix);
            out.push_str(question_text(task, inst)?);
        }
        PromptStyle::Continuation => {
            out.push_str(context_text(task, inst)?);
            if let Some(lead) = &t.mcf_lead_in {
                out.push('\n');
                out.push_str(lead);
            }
        }
        PromptStyle::BlankFill => {
            if let Some(lead) = &t.mcf_lead_in {
                out.push_str(lead);
                out.push(' ');
            }
            out.push_str(question_text(task, inst)?);
        }
    }
    out.push_str(&options);
    out.push('\n');
    out.push_str(&t.answer_suffix);
    Ok(out)
}

fn shot_instance(shot: &FewShotExample) -> &Instance {
    &shot.instance
}

/// A shot is the query rendering of its instance with the gold continuation
/// appended, so shot and query bytes share one code path.
fn render_shot(task: &TaskSpec, shot: &FewShotExample, mcf: bool) -> Result<String> {
    let inst = shot_instance(shot);
    if mcf {
        let mut text = mcf_query(task, inst)?;
        text.push(' ');
        text.push(letter(inst.gold, task, inst.source_row)?);
        Ok(text)
    } else if task.templates.style == PromptStyle::BlankFill {
        let sentence = question_text(task, inst)?;
        let (before, after) = split_blank(task, inst, sentence)?;
        Ok(format!("{before}{}{after}", shot.gold_text))
    } else {
        let mut text = cf_query(task, inst)?;
        text.push(' ');
        text.push_str(&shot.gold_text);
        Ok(text)
    }
}

fn take_shots(task: &TaskSpec, num_shots: usize) -> Result<&[FewShotExample]> {
    task.shots.get(..num_shots).ok_or_else(|| {
        Error::Config(format!(
            "task '{}' has {} shots, {} requested",
            task.task_id,
            task.shots.len(),
            num_shots
        ))
    })
}

fn prompt_parts(
    task: &TaskSpec,
    query: String,
    num_shots: usize,
    mcf: bool,
) -> Result<PromptParts> {
    let shots = take_shots(task, num_shots)?
        .iter()
        .map(|s| render_shot(task, s, mcf))
        .collect::<Result<Vec<_>>>()?;
    Ok(PromptParts {
        instruction: task.instruction.clone(),
        shots,
        query,
    })
}

/// CF prompt layout: most tasks share one context across per-choice
/// continuations; blank-fill tasks invert this (per-choice contexts, one
/// shared continuation).
#[derive(Debug, Clone)]
pub enum CfLayout {
    SharedContext {
        parts: PromptParts,
        continuations: Vec<String>,
    },
    SharedContinuation {
        parts: Vec<PromptParts>,
        continuation: String,
    },
}

pub fn render_cf(task: &TaskSpec, inst: &Instance, num_shots: usize) -> Result<CfLayout> {
    if task.templates.style == PromptStyle::BlankFill {
        let sentence = question_text(task, inst)?;
        let (before, after) = split_blank(task, inst, sentence)?;
        let parts = inst
            .choices
            .iter()
            .map(|choice| prompt_parts(task, format!("{before}{choice}"), num_shots, false))
            .collect::<Result<Vec<_>>>()?;
        Ok(CfLayout::SharedContinuation {
            parts,
            continuation: after.to_owned(),
        })
    } else {
        let parts = prompt_parts(task, cf_query(task, inst)?, num_shots, false)?;
        let continuations = inst.choices.iter().map(|c| format!(" {c}")).collect();
        Ok(CfLayout::SharedContext {
            parts,
            continuations,
        })
    }
}

pub struct McfRender {
    pub parts: PromptParts,
    pub labels: Vec<String>,
    pub gold_letter: char,
}

pub fn render_mcf(task: &TaskSpec, inst: &Instance, num_shots: usize) -> Result<McfRender> {
    let parts = prompt_parts(task, mcf_query(task, inst)?, num_shots, true)?;
    let labels = inst
        .choices
        .iter()
        .enumerate()
        .map(|(i, _)| Ok(format!(" {}", letter(i, task, inst.source_row)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(McfRender {
        parts,
        labels,
        gold_letter: letter(inst.gold, task, inst.source_row)?,
    })
}

/// The pmi denominator prompt: bare answer prefix, no shots, no question.
/// Continuation bytes are identical to the paired CF continuation.
pub fn render_unconditional(
    task: &TaskSpec,
    source_row: usize,
    choice_index: usize,
    continuation: &str,
) -> Result<ScoreRequest> {
    ScoreRequest::new(
        Arc::from(task.templates.answer_suffix.as_str()),
        continuation.to_owned(),
        RequestRole::Unconditional,
        choice_index,
        task,
        source_row,
    )
}

// ---------------------------------------------------------------------------
// Context-window enforcement.

pub trait TokenCounter {
    fn count_tokens(&self, text: &str) -> Result<usize>;
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct TruncationReport {
    pub shots_dropped: usize,
    pub chars_trimmed: usize,
    pub degraded: bool,
}

impl TruncationReport {
    pub fn merge(&mut self, other: &TruncationReport) {
        self.shots_dropped = self.shots_dropped.max(other.shots_dropped);
        self.chars_trimmed = self.chars_trimmed.max(other.chars_trimmed);
        self.degraded |= other.degraded;
    }
}

/// Fit `parts + continuation` into `limit` tokens: drop the earliest whole
/// in-context example while over budget, then, with no shots left, trim the
/// smallest leading-character prefix that fits and flag the prompt degraded.
pub fn fit_to_window(
    parts: &PromptParts,
    continuation: &str,
    limit: usize,
    counter: &dyn TokenCounter,
) -> Result<(String, TruncationReport)> {
    let cont_tokens = counter.count_tokens(continuation)?;
    if cont_tokens > limit {
        return Err(Error::ContinuationTooLong {
            count: cont_tokens,
            limit,
        });
    }
    let budget = limit - cont_tokens;
    let mut report = TruncationReport::default();
    let mut current = parts.clone();
    loop {
        let joined = current.join();
        if counter.count_tokens(&joined)? <= budget {
            return Ok((joined, report));
        }
        if current.shots.is_empty() {
            let trimmed = trim_leading(&joined, budget, counter)?;
            report.chars_trimmed = joined.chars().count() - trimmed.chars().count();
            report.degraded = true;
            return Ok((trimmed, report));
        }
        current = current.without_earliest_shots(1);
        report.shots_dropped += 1;
    }
}

/// Smallest leading-character cut that brings the text within budget.
fn trim_leading(text: &str, budget: usize, counter: &dyn TokenCounter) -> Result<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut lo = 0usize; // not enough cut
    let mut hi = chars.len(); // always fits (empty text)
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let candidate: String = chars[mid..].iter().collect();
        if counter.count_tokens(&candidate)? <= budget {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(chars[hi..].iter().collect())
}

// ---------------------------------------------------------------------------
// Request assembly.

pub struct InstanceRequests {
    pub cf: Vec<ScoreRequest>,
    pub unconditional: Vec<ScoreRequest>,
    pub mcf: Vec<ScoreRequest>,
    pub truncation: TruncationReport,
}

pub struct RenderOptions<'a> {
    pub num_shots: usize,
    pub include_cf: bool,
    pub include_mcf: bool,
    pub include_unconditional: bool,
    /// When set, prompts are fitted to [`CONTEXT_WINDOW`] with this counter.
    pub counter: Option<&'a dyn TokenCounter>,
}

fn finalize_context(
    parts: &PromptParts,
    worst_continuation: &str,
    counter: Option<&dyn TokenCounter>,
    report: &mut TruncationReport,
) -> Result<Arc<str>> {
    match counter {
        Some(c) => {
            let (joined, r) = fit_to_window(parts, worst_continuation, CONTEXT_WINDOW, c)?;
            report.merge(&r);
            Ok(Arc::from(joined))
        }
        None => Ok(Arc::from(parts.join())),
    }
}

/// Render every request an instance needs under the given options.
pub fn render_instance(
    task: &TaskSpec,
    inst: &Instance,
    opts: &RenderOptions,
) -> Result<InstanceRequests> {
    let mut out = InstanceRequests {
        cf: Vec::new(),
        unconditional: Vec::new(),
        mcf: Vec::new(),
        truncation: TruncationReport::default(),
    };
    if opts.include_cf {
        match render_cf(task, inst, opts.num_shots)? {
            CfLayout::SharedContext {
                parts,
                continuations,
            } => {
                let worst = longest_by_tokens(&continuations, opts.counter)?;
                let context = finalize_context(
                    &parts,
                    &continuations[worst],
                    opts.counter,
                    &mut out.truncation,
                )?;
                for (i, cont) in continuations.iter().enumerate() {
                    out.cf.push(ScoreRequest::new(
                        Arc::clone(&context),
                        cont.clone(),
                        RequestRole::CfChoice,
                        i,
                        task,
                        inst.source_row,
                    )?);
                }
                if opts.include_unconditional {
                    for (i, cont) in continuations.iter().enumerate() {
                        out.unconditional.push(render_unconditional(
                            task,
                            inst.source_row,
                            i,
                            cont,
                        )?);
                    }
                }
            }
            CfLayout::SharedContinuation {
                parts,
                continuation,
            } => {
                for (i, choice_parts) in parts.iter().enumerate() {
                    let context = finalize_context(
                        choice_parts,
                        &continuation,
                        opts.counter,
                        &mut out.truncation,
                    )?;
                    out.cf.push(ScoreRequest::new(
                        context,
                        continuation.clone(),
                        RequestRole::CfChoice,
                        i,
                        task,
                        inst.source_row,
                    )?);
                }
                if opts.include_unconditional {
                    for i in 0..parts.len() {
                        out.unconditional.push(render_unconditional(
                            task,
                            inst.source_row,
                            i,
                            &continuation,
                        )?);
                    }
                }
            }
        }
    }
    if opts.include_mcf {
        let rendered = render_mcf(task, inst, opts.num_shots)?;
        let worst = longest_by_tokens(&rendered.labels, opts.counter)?;
        let context = finalize_context(
            &rendered.parts,
            &rendered.labels[worst],
            opts.counter,
            &mut out.truncation,
        )?;
        for (i, label) in rendered.labels.iter().enumerate() {
            out.mcf.push(ScoreRequest::new(
                Arc::clone(&context),
                label.clone(),
                RequestRole::McfLabel,
                i,
                task,
                inst.source_row,
            )?);
        }
    }
    Ok(out)
}

fn longest_by_tokens(
    continuations: &[String],
    counter: Option<&dyn TokenCounter>,
) -> Result<usize> {
    debug_assert!(!continuations.is_empty());
    let Some(counter) = counter else {
        return Ok(0);
    };
    let mut best = 0usize;
    let mut best_count = 0usize;
    for (i, cont) in continuations.iter().enumerate() {
        let count = counter.count_tokens(cont)?;
        if count > best_count {
            best = i;
            best_count = count;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tasks::{FieldMap, FormulationTemplate, Normalization, NumChoices, Split};

    fn toy_task(style: PromptStyle) -> TaskSpec {
        TaskSpec {
            task_id: "toy".into(),
            split: Split::Test,
            total_instances: 1,
            eval_cap: None,
            num_choices: NumChoices::Variable,
            cf_normalization: Normalization::None,
            templates: FormulationTemplate {
                style,
                question_prefix: "Question: ".into(),
                answer_suffix: "Answer:".into(),
                mcf_lead_in: match style {
                    PromptStyle::BlankFill => Some("Fill in the blank:".into()),
                    PromptStyle::Continuation => Some("Choose the best continuation:".into()),
                    PromptStyle::Qa => None,
                },
                cf_strip_affixes: style != PromptStyle::Qa,
            },
            instruction: None,
            shots: Vec::new(),
            subtask_of: None,
            field_map: FieldMap {
                question: Some("question".into()),
                context: None,
                choices: "choices".into(),
                gold: "gold".into(),
            },
            instances_path: None,
            shots_path: None,
        }
    }

    fn qa_instance() -> Instance {
        Instance {
            source_row: 0,
            question: Some("What color is the sky?".into()),
            context: None,
            choices: vec!["blue".into(), "green".into()],
            gold: 0,
        }
    }

    #[test]
    fn cf_continuations_carry_leading_space() {
        let task = toy_task(PromptStyle::Qa);
        let CfLayout::SharedContext {
            parts,
            continuations,
        } = render_cf(&task, &qa_instance(), 0).unwrap()
        else {
            panic!("expected shared context")
        };
        assert_eq!(parts.join(), "Question: What color is the sky?\nAnswer:");
        assert_eq!(continuations, vec![" blue", " green"]);
    }

    #[test]
    fn mcf_option_lines_match_pattern() {
        let task = toy_task(PromptStyle::Qa);
        let rendered = render_mcf(&task, &qa_instance(), 0).unwrap();
        let prompt = rendered.parts.join();
        assert_eq!(
            prompt,
            "Question: What color is the sky?\n A. blue\n B. green\nAnswer:"
        );
        assert_eq!(rendered.labels, vec![" A", " B"]);
        assert_eq!(rendered.gold_letter, 'A');
    }

    #[test]
    fn blank_fill_varies_context_and_shares_continuation() {
        let task = toy_task(PromptStyle::BlankFill);
        let inst = Instance {
            source_row: 0,
            question: Some("The ___ is small.".into()),
            context: None,
            choices: vec!["garage".into(), "backyard".into()],
            gold: 0,
        };
        let CfLayout::SharedContinuation {
            parts,
            continuation,
        } = render_cf(&task, &inst, 0).unwrap()
        else {
            panic!("expected shared continuation")
        };
        assert_eq!(parts[0].join(), "The garage");
        assert_eq!(parts[1].join(), "The backyard");
        assert_eq!(continuation, " is small.");
    }

    #[test]
    fn blank_fill_without_marker_errors() {
        let task = toy_task(PromptStyle::BlankFill);
        let inst = Instance {
            source_row: 3,
            question: Some("No marker here.".into()),
            context: None,
            choices: vec!["a".into(), "b".into()],
            gold: 0,
        };
        assert!(render_cf(&task, &inst, 0).is_err());
    }

    #[test]
    fn unconditional_matches_cf_continuation_bytes() {
        let task = toy_task(PromptStyle::Qa);
        let req = render_unconditional(&task, 0, 1, " dry palms").unwrap();
        assert_eq!(&*req.context, "Answer:");
        assert_eq!(req.continuation, " dry palms");
        let again = render_unconditional(&task, 9, 1, " dry palms").unwrap();
        assert_eq!(req.request_id, again.request_id);
    }

    #[test]
    fn too_many_choices_is_an_error() {
        let task = toy_task(PromptStyle::Qa);
        let inst = Instance {
            source_row: 0,
            question: Some("q".into()),
            context: None,
            choices: (0..27).map(|i| format!("c{i}")).collect(),
            gold: 0,
        };
        assert!(render_mcf(&task, &inst, 0).is_err());
    }

    struct RunCounter;
    impl TokenCounter for RunCounter {
        fn count_tokens(&self, text: &str) -> Result<usize> {
            Ok(text.split_whitespace().count())
        }
    }

    fn words(n: usize) -> String {
        vec!["w"; n].join(" ")
    }

    #[test]
    fn window_fit_drops_whole_shots() {
        // Five 500-token shots plus a 300-token query against a 2500 budget:
        // one drop lands at 2300 tokens and the format stays intact.
        let parts = PromptParts {
            instruction: None,
            shots: (0..5).map(|_| words(500)).collect(),
            query: words(300),
        };
        let (fitted, report) = fit_to_window(&parts, " x", 2500, &RunCounter).unwrap();
        assert_eq!(report.shots_dropped, 1);
        assert!(!report.degraded);
        assert_eq!(RunCounter.count_tokens(&fitted).unwrap(), 2300);
    }

    #[test]
    fn window_fit_unchanged_when_under_limit() {
        let parts = PromptParts {
            instruction: None,
            shots: vec![words(10)],
            query: words(5),
        };
        let (fitted, report) = fit_to_window(&parts, " x", 2048, &RunCounter).unwrap();
        assert_eq!(report, TruncationReport::default());
        assert_eq!(fitted, parts.join());
    }

    #[test]
    fn window_fit_trims_characters_when_no_shots_remain() {
        let parts = PromptParts {
            instruction: None,
            shots: Vec::new(),
            query: words(50),
        };
        let (fitted, report) = fit_to_window(&parts, " x", 10, &RunCounter).unwrap();
        assert!(report.degraded);
        assert!(report.chars_trimmed > 0);
        assert!(RunCounter.count_tokens(&fitted).unwrap() <= 9);
        assert!(parts.query.ends_with(&fitted));
    }

    #[test]
    fn oversized_continuation_is_an_error() {
        let parts = PromptParts {
            instruction: None,
            shots: Vec::new(),
            query: "q".into(),
        };
        let cont = format!(" {}", words(3000));
        assert!(matches!(
            fit_to_window(&parts, &cont, 2048, &RunCounter),
            Err(Error::ContinuationTooLong { .. })
        ));
    }

    #[test]
    fn join_with_instruction_and_no_shots() {
        let parts = PromptParts {
            instruction: Some("Intro line.".into()),
            shots: Vec::new(),
            query: "Question: q\nAnswer:".into(),
        };
        assert_eq!(parts.join(), "Intro line.\n\nQuestion: q\nAnswer:");
    }
}
