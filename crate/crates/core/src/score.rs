//! Per-instance scoring: the four cloze normalizations, argmax prediction
//! with deterministic tie handling, and correctness under each formulation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tasks::Normalization;

/// Near-tie diagnostic threshold. Float perturbations at this scale can flip
/// close answers between runs on different hardware; flagged, never acted on.
pub const NEAR_TIE_TOLERANCE: f64 = 1e-9;

/// A backend's answer for one request: summed natural-log probability of the
/// continuation, its token count, and its character count (Unicode scalar
/// values, counting the leading space).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredContinuation {
    pub request_id: String,
    pub logprob_sum: f64,
    pub token_count: usize,
    pub char_count: usize,
}

/// Apply one normalization scheme to a summed log-probability.
pub fn normalize(
    logprob_sum: f64,
    token_count: usize,
    char_count: usize,
    unconditional: Option<f64>,
    scheme: Normalization,
) -> Result<f64> {
    match scheme {
        Normalization::None => Ok(logprob_sum),
        Normalization::Token => {
            if token_count == 0 {
                return Err(Error::Scoring("token count must be positive".into()));
            }
            Ok(logprob_sum / token_count as f64)
        }
        Normalization::Char => {
            if char_count == 0 {
                return Err(Error::Scoring("char count must be positive".into()));
            }
            Ok(logprob_sum / char_count as f64)
        }
        Normalization::Pmi => {
            let u = unconditional.ok_or_else(|| {
                Error::Scoring("pmi normalization needs an unconditional log-probability".into())
            })?;
            Ok(logprob_sum - u)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub index: usize,
    /// An exactly equal score appeared at a higher index; broken toward the
    /// lowest index.
    pub tie: bool,
    /// Another score sits within [`NEAR_TIE_TOLERANCE`] of the maximum
    /// without being exactly equal. Diagnostic only.
    pub near_tie: bool,
}

/// Argmax over per-choice scores. Exact ties break toward the lowest index.
pub fn predict(scores: &[f64]) -> Result<Prediction> {
    if scores.is_empty() {
        return Err(Error::Scoring(
            "cannot predict from an empty score list".into(),
        ));
    }
    let mut best = 0usize;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    let max = scores[best];
    let tie = scores
        .iter()
        .enumerate()
        .any(|(i, &s)| i != best && s == max);
    let near_tie = scores
        .iter()
        .enumerate()
        .any(|(i, &s)| i != best && s != max && (max - s).abs() <= NEAR_TIE_TOLERANCE);
    Ok(Prediction {
        index: best,
        tie,
        near_tie,
    })
}

/// Per-scheme values for the cloze formulation. `pmi` is present only when
/// unconditional scores were gathered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerScheme<T> {
    pub none: T,
    pub token: T,
    pub char: T,
    pub pmi: Option<T>,
}

impl<T> PerScheme<T> {
    pub fn get(&self, scheme: Normalization) -> Option<&T> {
        match scheme {
            Normalization::None => Some(&self.none),
            Normalization::Token => Some(&self.token),
            Normalization::Char => Some(&self.char),
            Normalization::Pmi => self.pmi.as_ref(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub index: usize,
    pub tie: bool,
    pub near_tie: bool,
    pub correct: bool,
}

impl PredictionRecord {
    fn new(p: Prediction, gold: usize) -> Self {
        PredictionRecord {
            index: p.index,
            tie: p.tie,
            near_tie: p.near_tie,
            correct: p.index == gold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfResult {
    pub raw: Vec<f64>,
    pub token_counts: Vec<usize>,
    pub char_counts: Vec<usize>,
    pub unconditional: Option<Vec<f64>>,
    pub scores: PerScheme<Vec<f64>>,
    pub prediction: PerScheme<PredictionRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McfResult {
    pub label_logprobs: Vec<f64>,
    pub prediction: PredictionRecord,
}

/// Per-instance outcome under every computed scheme and formulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub task_id: String,
    pub source_row: usize,
    pub gold: usize,
    pub num_choices: usize,
    pub cf: Option<CfResult>,
    pub mcf: Option<McfResult>,
}

/// Score one instance from its gathered continuations.
///
/// All schemes computable from the inputs are recorded: none/token/char come
/// free with the conditional scores, pmi additionally needs the unconditional
/// pass. MCF predicts from raw label log-probabilities with no normalization.
pub fn score_instance(
    task_id: &str,
    source_row: usize,
    gold: usize,
    num_choices: usize,
    cf: Option<&[ScoredContinuation]>,
    unconditional: Option<&[ScoredContinuation]>,
    mcf: Option<&[ScoredContinuation]>,
) -> Result<InstanceResult> {
    let count_err = |what: &str, got: usize| {
        Error::Scoring(format!(
            "{task_id} row {source_row}: {what} has {got} entries for {num_choices} choices"
        ))
    };
    let cf_result = match cf {
        Some(scores) => {
            if scores.len() != num_choices {
                return Err(count_err("cf scores", scores.len()));
            }
            if let Some(u) = unconditional {
                if u.len() != num_choices {
                    return Err(count_err("unconditional scores", u.len()));
                }
            }
            let raw: Vec<f64> = scores.iter().map(|s| s.logprob_sum).collect();
            let token_counts: Vec<usize> = scores.iter().map(|s| s.token_count).collect();
            let char_counts: Vec<usize> = scores.iter().map(|s| s.char_count).collect();
            let uncond_raw: Option<Vec<f64>> =
                unconditional.map(|u| u.iter().map(|s| s.logprob_sum).collect());

            let mut by_scheme = PerScheme {
                none: Vec::with_capacity(num_choices),
                token: Vec::with_capacity(num_choices),
                char: Vec::with_capacity(num_choices),
                pmi: uncond_raw.as_ref().map(|_| Vec::with_capacity(num_choices)),
            };
            for i in 0..num_choices {
                let u = uncond_raw.as_ref().map(|u| u[i]);
                by_scheme.none.push(normalize(
                    raw[i],
                    token_counts[i],
                    char_counts[i],
                    u,
                    Normalization::None,
                )?);
                by_scheme.token.push(normalize(
                    raw[i],
                    token_counts[i],
                    char_counts[i],
                    u,
                    Normalization::Token,
                )?);
                by_scheme.char.push(normalize(
                    raw[i],
                    token_counts[i],
                    char_counts[i],
                    u,
                    Normalization::Char,
                )?);
                if let Some(pmi) = by_scheme.pmi.as_mut() {
                    pmi.push(normalize(
                        raw[i],
                        token_counts[i],
                        char_counts[i],
                        u,
                        Normalization::Pmi,
                    )?);
                }
            }
            let prediction = PerScheme {
                none: PredictionRecord::new(predict(&by_scheme.none)?, gold),
                token: PredictionRecord::new(predict(&by_scheme.token)?, gold),
                char: PredictionRecord::new(predict(&by_scheme.char)?, gold),
                pmi: match &by_scheme.pmi {
                    Some(scores) => Some(PredictionRecord::new(predict(scores)?, gold)),
                    None => None,
                },
            };
            Some(CfResult {
                raw,
                token_counts,
                char_counts,
                unconditional: uncond_raw,
                scores: by_scheme,
                prediction,
            })
        }
        None => None,
    };

    let mcf_result = match mcf {
        Some(scores) => {
            if scores.len() != num_choices {
                return Err(count_err("mcf scores", scores.len()));
            }
            let label_logprobs: Vec<f64> = scores.iter().map(|s| s.logprob_sum).collect();
            let prediction = PredictionRecord::new(predict(&label_logprobs)?, gold);
            Some(McfResult {
                label_logprobs,
                prediction,
            })
        }
        None => None,
    };

    Ok(InstanceResult {
        task_id: task_id.to_owned(),
        source_row,
        gold,
        num_choices,
        cf: cf_result,
        mcf: mcf_result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(id: &str, logprob: f64, tokens: usize, chars: usize) -> ScoredContinuation {
        ScoredContinuation {
            request_id: id.into(),
            logprob_sum: logprob,
            token_count: tokens,
            char_count: chars,
        }
    }

    #[test]
    fn normalize_formulas() {
        assert_eq!(
            normalize(-2.0, 1, 5, None, Normalization::Char).unwrap(),
            -0.4
        );
        assert_eq!(
            normalize(-3.1, 1, 4, Some(-3.1), Normalization::Pmi).unwrap(),
            0.0
        );
        assert_eq!(
            normalize(-4.2, 1, 4, None, Normalization::Token).unwrap(),
            -4.2
        );
        assert_eq!(
            normalize(-4.2, 1, 4, None, Normalization::None).unwrap(),
            -4.2
        );
        assert!(normalize(-1.0, 1, 4, None, Normalization::Pmi).is_err());
        assert!(normalize(-1.0, 0, 4, None, Normalization::Token).is_err());
    }

    #[test]
    fn predict_argmax_and_ties() {
        let p = predict(&[-1.0, -0.5, -2.0]).unwrap();
        assert_eq!((p.index, p.tie), (1, false));
        let p = predict(&[-1.0, -1.0]).unwrap();
        assert_eq!((p.index, p.tie), (0, true));
        let p = predict(&[-1.0]).unwrap();
        assert_eq!(p.index, 0);
        assert!(predict(&[]).is_err());
    }

    #[test]
    fn near_tie_is_flagged_but_not_acted_on() {
        let p = predict(&[-1.0, -1.0 - 1e-10]).unwrap();
        assert_eq!(p.index, 0);
        assert!(!p.tie);
        assert!(p.near_tie);
    }

    #[test]
    fn single_token_answers_collapse_token_to_none() {
        let cf = vec![sc("a", -0.9, 1, 4), sc("b", -1.7, 1, 3)];
        let result = score_instance("boolq", 0, 0, 2, Some(&cf), None, None).unwrap();
        let cf = result.cf.unwrap();
        assert_eq!(cf.prediction.none.index, cf.prediction.token.index);
        assert_eq!(cf.scores.none, vec![-0.9, -1.7]);
        assert_eq!(cf.scores.token, vec![-0.9, -1.7]);
    }

    #[test]
    fn pmi_can_flip_a_short_answer_bias() {
        // Raw favors the short wrong answer; conditioning gain favors gold.
        let cf = vec![sc("a", -2.0, 2, 6), sc("b", -6.0, 5, 20)];
        let uncond = vec![sc("ua", -2.5, 2, 6), sc("ub", -11.0, 5, 20)];
        let result = score_instance("toy", 0, 1, 2, Some(&cf), Some(&uncond), None).unwrap();
        let cf = result.cf.unwrap();
        // none: [-2.0, -6.0] -> 0; pmi: [0.5, 5.0] -> 1.
        assert_eq!(cf.prediction.none.index, 0);
        assert_eq!(cf.prediction.pmi.as_ref().unwrap().index, 1);
        assert!(cf.prediction.pmi.as_ref().unwrap().correct);
    }

    #[test]
    fn shared_continuation_prediction_is_raw_argmax() {
        // Identical continuations (equal lengths): every scheme agrees.
        let cf = vec![sc("a", -4.0, 3, 10), sc("b", -3.2, 3, 10)];
        let result = score_instance("winogrande", 0, 1, 2, Some(&cf), None, None).unwrap();
        let cf = result.cf.unwrap();
        assert_eq!(cf.prediction.none.index, 1);
        assert_eq!(cf.prediction.token.index, 1);
        assert_eq!(cf.prediction.char.index, 1);
    }

    #[test]
    fn count_mismatch_is_an_error() {
        let cf = vec![sc("a", -1.0, 1, 2)];
        assert!(score_instance("toy", 0, 0, 2, Some(&cf), None, None).is_err());
    }
}
