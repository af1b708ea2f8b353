//! The bundled suite must match the standard table: splits, totals, caps,
//! normalizations, and selected instance counts per task.

use std::path::PathBuf;

use mceval_core::{
    load_instances, load_task_suite, select_eval_instances, Normalization, TaskSuite,
};

fn config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/config/tasks.json")
}

fn suite() -> TaskSuite {
    load_task_suite(&config_path(), true).unwrap()
}

const EXPECTED: [(&str, usize, Normalization); 10] = [
    ("arc_challenge", 1172, Normalization::Pmi),
    ("arc_easy", 1000, Normalization::Char),
    ("boolq", 1000, Normalization::None),
    ("csqa", 1221, Normalization::Pmi),
    ("hellaswag", 1000, Normalization::Char),
    ("mmlu", 14042, Normalization::Char),
    ("obqa", 500, Normalization::Pmi),
    ("piqa", 1000, Normalization::Char),
    ("siqa", 1000, Normalization::Char),
    ("winogrande", 1267, Normalization::None),
];

#[test]
fn ten_top_level_tasks_with_mmlu_subtasks() {
    let suite = suite();
    assert_eq!(suite.top_level().count(), 10);
    assert_eq!(suite.subtasks_of("mmlu").count(), 57);
    assert_eq!(suite.specs.len(), 10 + 57);
}

#[test]
fn selected_counts_and_normalizations_match_the_standard() {
    let suite = suite();
    for (task_id, expected_count, expected_norm) in EXPECTED {
        let spec = suite.get(task_id).unwrap();
        assert_eq!(
            spec.cf_normalization, expected_norm,
            "{task_id} normalization"
        );
        let selected_count = if task_id == "mmlu" {
            suite
                .subtasks_of("mmlu")
                .map(|sub| {
                    let instances = load_instances(sub).unwrap();
                    select_eval_instances(&instances, sub).unwrap().len()
                })
                .sum::<usize>()
        } else {
            let instances = load_instances(spec).unwrap();
            select_eval_instances(&instances, spec).unwrap().len()
        };
        assert_eq!(selected_count, expected_count, "{task_id} selected count");
    }
}

#[test]
fn selection_is_deterministic_across_runs() {
    let suite = suite();
    let spec = suite.get("hellaswag").unwrap();
    let instances = load_instances(spec).unwrap();
    let a: Vec<usize> = select_eval_instances(&instances, spec)
        .unwrap()
        .iter()
        .map(|i| i.source_row)
        .collect();
    let b: Vec<usize> = select_eval_instances(&instances, spec)
        .unwrap()
        .iter()
        .map(|i| i.source_row)
        .collect();
    assert_eq!(a, b);
    assert_eq!(a.len(), 1000);
    let mut dedup = a.clone();
    dedup.sort_unstable();
    dedup.dedup();
    assert_eq!(dedup.len(), 1000);
}

#[test]
fn sampled_selection_follows_the_reference_trace() {
    // hellaswag's population is the (seed 1234, n 10042, k 1000) fixture;
    // selected source rows must equal the oracle's indices in emission order.
    let suite = suite();
    let spec = suite.get("hellaswag").unwrap();
    let instances = load_instances(spec).unwrap();
    let selected = select_eval_instances(&instances, spec).unwrap();
    let fixture_line = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/oracles/samples.jsonl"),
    )
    .unwrap()
    .lines()
    .find(|l| l.contains("\"n\":10042"))
    .unwrap()
    .to_owned();
    let fixture: serde_json::Value = serde_json::from_str(&fixture_line).unwrap();
    let expected: Vec<usize> = fixture["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    let got: Vec<usize> = selected.iter().map(|i| i.source_row).collect();
    assert_eq!(got, expected);
}

#[test]
fn unsampled_tasks_keep_source_order() {
    let suite = suite();
    let spec = suite.get("obqa").unwrap();
    let instances = load_instances(spec).unwrap();
    let selected = select_eval_instances(&instances, spec).unwrap();
    assert_eq!(selected.len(), 500);
    for (i, inst) in selected.iter().enumerate() {
        assert_eq!(inst.source_row, i);
    }
}

#[test]
fn strict_mode_rejects_a_normalization_deviation() {
    let config = std::fs::read_to_string(config_path()).unwrap();
    let mut parsed: serde_json::Value = serde_json::from_str(&config).unwrap();
    parsed["tasks"][0]["cf_normalization"] = serde_json::Value::String("token".into());
    assert_eq!(parsed["tasks"][0]["task_id"], "arc_challenge");

    let dir = tempfile::tempdir().unwrap();
    // Keep config-relative fixture paths valid by pointing them back at data/.
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    std::os::unix::fs::symlink(data.join("instances"), dir.path().join("instances")).unwrap();
    std::os::unix::fs::symlink(data.join("shots"), dir.path().join("shots")).unwrap();
    std::fs::create_dir(dir.path().join("config")).unwrap();
    let config_file = dir.path().join("config/tasks.json");
    std::fs::write(&config_file, serde_json::to_string(&parsed).unwrap()).unwrap();

    let err = load_task_suite(&config_file, true).unwrap_err();
    assert!(err.to_string().contains("arc_challenge"), "{err}");
    assert!(err.to_string().contains("allow-nonstandard"), "{err}");
    // The same config is accepted once deviations are allowed.
    load_task_suite(&config_file, false).unwrap();
}

#[test]
fn shots_are_five_with_varied_labels() {
    let suite = suite();
    for spec in suite.leaves() {
        assert_eq!(spec.shots.len(), 5, "{}", spec.task_id);
        let first = spec.shots[0].instance.gold;
        assert!(
            spec.shots.iter().any(|s| s.instance.gold != first),
            "{}: shot labels all identical",
            spec.task_id
        );
        for shot in &spec.shots {
            assert_eq!(shot.split, "train", "{}", spec.task_id);
        }
    }
}
