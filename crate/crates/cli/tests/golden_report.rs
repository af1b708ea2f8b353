//! A full mock-backend run over arc_challenge must reproduce the committed
//! golden report byte-for-byte (results pinned by hash).

use std::path::PathBuf;
use std::process::Command;

use mceval_core::hash::sha256_hex;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn mock_arc_challenge_report_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = data_dir().join("config/tasks.json");
    let output = Command::new(env!("CARGO_BIN_EXE_mceval"))
        .args([
            "eval",
            "--config",
            config.to_str().unwrap(),
            "--backend",
            "mock",
            "--tasks",
            "arc_challenge",
            "--output-dir",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");

    let golden = data_dir().join("golden/report");
    for file in ["report.json", "report.md", "report.csv"] {
        let fresh = std::fs::read(out.join(file)).unwrap();
        let pinned = std::fs::read(golden.join(file)).unwrap();
        assert_eq!(fresh, pinned, "{file} drifted from the pinned golden");
    }
    let results = std::fs::read(out.join("results.jsonl")).unwrap();
    let pinned_hash = std::fs::read_to_string(golden.join("results.sha256")).unwrap();
    assert_eq!(sha256_hex(&results), pinned_hash.trim());
}
