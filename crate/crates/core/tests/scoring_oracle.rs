//! Normalization math against an independent brute-force oracle, plus the
//! scale/length invariance properties.

use mceval_core::{normalize, predict, Mt19937, Normalization};
use proptest::prelude::*;

/// Oracle side: plain arithmetic, no shared code with `normalize`.
fn oracle_score(l: f64, t: usize, c: usize, u: f64, scheme: Normalization) -> f64 {
    match scheme {
        Normalization::None => l,
        Normalization::Token => l / (t as f64),
        Normalization::Char => l / (c as f64),
        Normalization::Pmi => l - u,
    }
}

/// Oracle side: exhaustive pairwise comparison instead of a fold, with the
/// same lowest-index tie rule.
fn oracle_argmax(scores: &[f64]) -> usize {
    for (i, &candidate) in scores.iter().enumerate() {
        let mut is_max = true;
        for (j, &other) in scores.iter().enumerate() {
            if other > candidate || (other == candidate && j < i) {
                is_max = false;
                break;
            }
        }
        if is_max {
            return i;
        }
    }
    unreachable!("non-empty scores always have a maximum");
}

/// Deterministic synthetic score sets driven by the in-tree generator.
struct SyntheticCase {
    logprobs: Vec<f64>,
    token_counts: Vec<usize>,
    char_counts: Vec<usize>,
    unconditional: Vec<f64>,
}

fn synthetic_case(rng: &mut Mt19937) -> SyntheticCase {
    let n = 2 + rng.randbelow(4).unwrap() as usize; // 2..=5 choices
    let mut logprobs = Vec::with_capacity(n);
    let mut token_counts = Vec::with_capacity(n);
    let mut char_counts = Vec::with_capacity(n);
    let mut unconditional = Vec::with_capacity(n);
    for _ in 0..n {
        logprobs.push(-(rng.randbelow(150_000).unwrap() as f64) / 10_000.0);
        token_counts.push(1 + rng.randbelow(6).unwrap() as usize);
        char_counts.push(2 + rng.randbelow(40).unwrap() as usize);
        unconditional.push(-(rng.randbelow(150_000).unwrap() as f64) / 10_000.0);
    }
    SyntheticCase {
        logprobs,
        token_counts,
        char_counts,
        unconditional,
    }
}

#[test]
fn thousand_randomized_sets_match_the_oracle() {
    let mut rng = Mt19937::seeded(20240601);
    for case_idx in 0..1000 {
        let case = synthetic_case(&mut rng);
        for scheme in Normalization::ALL {
            let mut ours = Vec::new();
            let mut oracle = Vec::new();
            for i in 0..case.logprobs.len() {
                let got = normalize(
                    case.logprobs[i],
                    case.token_counts[i],
                    case.char_counts[i],
                    Some(case.unconditional[i]),
                    scheme,
                )
                .unwrap();
                let want = oracle_score(
                    case.logprobs[i],
                    case.token_counts[i],
                    case.char_counts[i],
                    case.unconditional[i],
                    scheme,
                );
                assert!(
                    (got - want).abs() <= 1e-12,
                    "case {case_idx} scheme {} choice {i}: {got} vs {want}",
                    scheme.name()
                );
                ours.push(got);
                oracle.push(want);
            }
            let prediction = predict(&ours).unwrap();
            assert_eq!(
                prediction.index,
                oracle_argmax(&oracle),
                "case {case_idx} scheme {} prediction",
                scheme.name()
            );
        }
    }
}

#[test]
fn single_token_answers_make_token_equal_none() {
    let mut rng = Mt19937::seeded(7);
    for _ in 0..200 {
        let l = -(rng.randbelow(100_000).unwrap() as f64) / 10_000.0;
        let none = normalize(l, 1, 9, None, Normalization::None).unwrap();
        let token = normalize(l, 1, 9, None, Normalization::Token).unwrap();
        assert_eq!(none, token);
    }
}

#[test]
fn equal_conditional_and_unconditional_give_zero_pmi() {
    for l in [-0.25, -1.0, -7.75, -11.5] {
        assert_eq!(
            normalize(l, 3, 12, Some(l), Normalization::Pmi).unwrap(),
            0.0
        );
    }
}

proptest! {
    /// Adding a constant to every choice's logprob leaves the none-scheme
    /// and pmi-scheme argmax unchanged.
    #[test]
    fn shift_invariance_for_none_and_pmi(
        base in proptest::collection::vec(-30.0f64..-0.01, 2..6),
        uncond in proptest::collection::vec(-30.0f64..-0.01, 6),
        shift in 0.01f64..5.0,
    ) {
        let uncond = &uncond[..base.len()];
        let shifted: Vec<f64> = base.iter().map(|l| l - shift).collect();

        let none_a = predict(&base).unwrap().index;
        let none_b = predict(&shifted).unwrap().index;
        prop_assert_eq!(none_a, none_b);

        let pmi = |ls: &[f64]| -> Vec<f64> {
            ls.iter()
                .zip(uncond)
                .map(|(l, u)| normalize(*l, 1, 2, Some(*u), Normalization::Pmi).unwrap())
                .collect()
        };
        let pmi_a = predict(&pmi(&base)).unwrap().index;
        let pmi_b = predict(&pmi(&shifted)).unwrap().index;
        prop_assert_eq!(pmi_a, pmi_b);
    }

    /// Scaling every logprob by a positive constant preserves the argmax of
    /// every scheme (counts fixed per choice).
    #[test]
    fn positive_scale_invariance_for_all_schemes(
        base in proptest::collection::vec(-30.0f64..-0.01, 2..6),
        tokens in proptest::collection::vec(1usize..8, 6),
        chars in proptest::collection::vec(2usize..50, 6),
        uncond in proptest::collection::vec(-30.0f64..-0.01, 6),
        scale in 0.1f64..4.0,
    ) {
        let n = base.len();
        for scheme in Normalization::ALL {
            let score = |ls: &[f64], us: &[f64]| -> Vec<f64> {
                (0..n)
                    .map(|i| normalize(ls[i], tokens[i], chars[i], Some(us[i]), scheme).unwrap())
                    .collect()
            };
            let scaled: Vec<f64> = base.iter().map(|l| l * scale).collect();
            let scaled_uncond: Vec<f64> = uncond.iter().map(|u| u * scale).collect();
            let a = predict(&score(&base, &uncond[..n])).unwrap().index;
            let b = predict(&score(&scaled, &scaled_uncond[..n])).unwrap().index;
            prop_assert_eq!(a, b, "scheme {}", scheme.name());
        }
    }

    /// With equal token and char counts across choices, all schemes predict
    /// identically when no unconditional prior separates them.
    #[test]
    fn equal_lengths_collapse_the_schemes(
        base in proptest::collection::vec(-30.0f64..-0.01, 2..6),
        tokens in 1usize..8,
        chars in 2usize..50,
    ) {
        let reference = predict(&base).unwrap().index;
        for scheme in [Normalization::None, Normalization::Token, Normalization::Char] {
            let scores: Vec<f64> = base
                .iter()
                .map(|l| normalize(*l, tokens, chars, None, scheme).unwrap())
                .collect();
            prop_assert_eq!(predict(&scores).unwrap().index, reference);
        }
    }
}
