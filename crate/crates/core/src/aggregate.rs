//! Suite statistics: per-task accuracy, best-of-formulation scores, macro
//! averages, standard errors, and the cross-model normalization analyses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::score::InstanceResult;
use crate::tasks::Normalization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Cf,
    Mcf,
}

/// Fraction of instances answered correctly under a formulation; CF requires
/// a normalization scheme.
pub fn task_accuracy(
    results: &[InstanceResult],
    formulation: Formulation,
    scheme: Option<Normalization>,
) -> Result<f64> {
    if results.is_empty() {
        return Err(Error::Report("accuracy over empty results".into()));
    }
    let mut correct = 0usize;
    for r in results {
        let is_correct = match formulation {
            Formulation::Cf => {
                let scheme =
                    scheme.ok_or_else(|| Error::Report("cf accuracy needs a scheme".into()))?;
                let cf =
                    r.cf.as_ref()
                        .ok_or_else(|| Error::Report(format!("{}: no cf result", r.task_id)))?;
                cf.prediction
                    .get(scheme)
                    .ok_or_else(|| {
                        Error::Report(format!(
                            "{}: scheme {} not computed",
                            r.task_id,
                            scheme.name()
                        ))
                    })?
                    .correct
            }
            Formulation::Mcf => {
                r.mcf
                    .as_ref()
                    .ok_or_else(|| Error::Report(format!("{}: no mcf result", r.task_id)))?
                    .prediction
                    .correct
            }
        };
        if is_correct {
            correct += 1;
        }
    }
    Ok(correct as f64 / results.len() as f64)
}

/// The final task metric: the better of the CF (recommended scheme) and MCF
/// accuracies. Ties report MCF.
pub fn best_of_score(cf_accuracy: f64, mcf_accuracy: f64) -> (f64, Formulation) {
    if cf_accuracy > mcf_accuracy {
        (cf_accuracy, Formulation::Cf)
    } else {
        (mcf_accuracy, Formulation::Mcf)
    }
}

/// Unweighted and instance-weighted means over subtask accuracies.
pub fn macro_micro(accuracies: &[f64], sizes: &[usize]) -> Result<(f64, f64)> {
    if accuracies.is_empty() || accuracies.len() != sizes.len() {
        return Err(Error::Report(format!(
            "macro average needs matching accuracy/size lists, got {}/{}",
            accuracies.len(),
            sizes.len()
        )));
    }
    if sizes.contains(&0) {
        return Err(Error::Report(
            "macro average requires positive sizes".into(),
        ));
    }
    let macro_avg = accuracies.iter().sum::<f64>() / accuracies.len() as f64;
    let total: usize = sizes.iter().sum();
    let micro_avg = accuracies
        .iter()
        .zip(sizes)
        .map(|(acc, &n)| acc * n as f64)
        .sum::<f64>()
        / total as f64;
    Ok((macro_avg, micro_avg))
}

/// Binomial standard error bound: sqrt(p(1-p)/n).
pub fn std_err(accuracy: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Report("standard error requires n >= 1".into()));
    }
    Ok((accuracy * (1.0 - accuracy) / n as f64).sqrt())
}

/// How often each scheme column attains the row maximum, as percentages of
/// the number of rows. Rows with a t-way tie credit 1/t to each tied scheme,
/// so the internal fractions sum to exactly one per row.
pub fn win_percentage(accuracy_matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    let rows = accuracy_matrix.len();
    if rows == 0 {
        return Err(Error::Report("win percentage over an empty matrix".into()));
    }
    let cols = accuracy_matrix[0].len();
    if cols == 0 || accuracy_matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::Report(
            "win percentage needs uniform non-empty rows".into(),
        ));
    }
    let mut credit = vec![0.0f64; cols];
    for row in accuracy_matrix {
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let winners: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == max)
            .map(|(i, _)| i)
            .collect();
        let share = 1.0 / winners.len() as f64;
        for i in winners {
            credit[i] += share;
        }
    }
    Ok(credit
        .into_iter()
        .map(|c| c / rows as f64 * 100.0)
        .collect())
}

/// Gap between the empirically best scheme and the recommended one, in the
/// units of the inputs (percentage points for percentage inputs).
pub fn diff_oracle(recommended_accuracy: f64, per_scheme_accuracies: &[f64]) -> Result<f64> {
    if per_scheme_accuracies.is_empty() {
        return Err(Error::Report(
            "diff oracle needs per-scheme accuracies".into(),
        ));
    }
    let best = per_scheme_accuracies
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let diff = best - recommended_accuracy;
    if diff < 0.0 {
        return Err(Error::Report(format!(
            "recommended accuracy {recommended_accuracy} exceeds every column; it must be one of them"
        )));
    }
    Ok(diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_of_uses_max_and_flags_source() {
        assert_eq!(best_of_score(0.571, 0.793), (0.793, Formulation::Mcf));
        assert_eq!(best_of_score(0.314, 0.241), (0.314, Formulation::Cf));
        assert_eq!(best_of_score(0.5, 0.5), (0.5, Formulation::Mcf));
    }

    #[test]
    fn macro_micro_arithmetic() {
        let (macro_avg, micro_avg) = macro_micro(&[1.0, 0.0], &[1, 9]).unwrap();
        assert_eq!(macro_avg, 0.5);
        assert_eq!(micro_avg, 0.1);
        let (macro_avg, micro_avg) = macro_micro(&[0.4, 0.6], &[10, 10]).unwrap();
        assert!((macro_avg - micro_avg).abs() < 1e-15);
        assert!(macro_micro(&[0.5], &[]).is_err());
        assert!(macro_micro(&[0.5], &[0]).is_err());
    }

    #[test]
    fn std_err_closed_form() {
        assert_eq!(std_err(0.5, 100).unwrap(), 0.05);
        assert_eq!(std_err(1.0, 57).unwrap(), 0.0);
        assert!(std_err(0.4, 0).is_err());
        // Magnitude check at a 500-instance task scale.
        let se = std_err(0.69, 500).unwrap();
        assert!((se - 0.0207).abs() < 5e-4);
    }

    #[test]
    fn win_percentage_credits_ties_fractionally() {
        let pct = win_percentage(&[vec![1.0, 3.0, 2.0, 0.0]]).unwrap();
        assert_eq!(pct, vec![0.0, 100.0, 0.0, 0.0]);
        let pct = win_percentage(&[vec![2.0, 2.0]]).unwrap();
        assert_eq!(pct, vec![50.0, 50.0]);
        let pct = win_percentage(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(pct, vec![50.0, 50.0]);
        assert!(win_percentage(&[]).is_err());
    }

    #[test]
    fn diff_oracle_gap() {
        assert!((diff_oracle(46.7, &[46.7, 47.8, 45.0, 40.1]).unwrap() - 1.1).abs() < 1e-9);
        assert_eq!(diff_oracle(47.8, &[46.7, 47.8]).unwrap(), 0.0);
        assert!(diff_oracle(50.0, &[46.7, 47.8]).is_err());
    }
}
