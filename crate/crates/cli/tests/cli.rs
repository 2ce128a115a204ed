use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hlbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlbc"))
        .args(args)
        .env_remove("HLBC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn compute_both_methods_agree() {
    let out = hlbc(&[
        "compute", "-t", "C", "-n", "2", "-l", "2,1", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(2 - t - t^2)*x1 "), "{text}");
    assert!(text.contains("x1^2*x2"));
    assert!(text.ends_with("methods agree: true\n"));
}

#[test]
fn non_regular_weight_is_rejected() {
    let out = hlbc(&["compute", "-t", "C", "-n", "2", "-l", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda not regular"));
    let out = hlbc(&["kn", "-t", "C", "-n", "2", "-l", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        hlbc(&["compute", "-t", "D", "-n", "2", "-l", "2,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hlbc(&["verify"]).status.code(), Some(2));
    let out = hlbc(&[
        "compute",
        "-t",
        "C",
        "-n",
        "3",
        "-l",
        "3,2,1",
        "--method",
        "alcove",
        "--max-pairs",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissible pairs"));
}

#[test]
fn compute_json_matches_schema() {
    let validator = schema("compute.schema.json");
    for args in [
        &[
            "compute", "-t", "B", "-n", "2", "-l", "2,1", "--format", "json",
        ][..],
        &[
            "compute", "-t", "C", "-n", "2", "-l", "3,1", "--format", "json", "--method", "both",
        ][..],
    ] {
        let out = hlbc(args);
        assert_eq!(out.status.code(), Some(0));
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&validator, &doc);
    }
}

#[test]
fn alpha_and_partition_inputs_agree() {
    let a = hlbc(&["compute", "-t", "B", "-n", "2", "-l", "2,1"]);
    let b = hlbc(&["compute", "-t", "B", "-n", "2", "--alpha", "1,1"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = hlbc(&["compute", "-t", "C", "-n", "2", "--alpha", "1,1"]);
    let d = hlbc(&["compute", "-t", "C", "-n", "2", "-l", "2,1"]);
    assert_eq!(stdout(&c), stdout(&d));
}

#[test]
fn verify_fibers_on_small_example() {
    let out = hlbc(&[
        "verify", "-t", "C", "-n", "2", "-l", "2,1", "--checks", "fibers", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&schema("verify.schema.json"), &doc);
    assert_eq!(doc["fillings"], 27);
    assert_eq!(doc["pairs"], 70);
    assert!((doc["factor"].as_f64().unwrap() - 70.0 / 27.0).abs() < 1e-12);
    let fibers = doc["fibers"].as_array().unwrap();
    assert_eq!(fibers.len(), 27);
    assert!(fibers.iter().all(|f| f["match"] == true));
}

#[test]
fn verify_chain_on_builtins() {
    let out = hlbc(&[
        "verify",
        "--builtin",
        "--checks",
        "chain",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let validator = schema("verify.schema.json");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    for line in lines {
        let doc: Value = serde_json::from_str(line).unwrap();
        assert_valid(&validator, &doc);
        assert_eq!(doc["passed"], true);
    }
}

#[test]
fn verify_weights_on_rank_three() {
    let out = hlbc(&[
        "verify", "-t", "C", "-n", "3", "-l", "3,2,1", "--checks", "weight",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("weight: pass (12496 pairs"));
}

#[test]
fn kn_counts_match_dimensions() {
    let out = hlbc(&["kn", "-t", "C", "-n", "2", "-l", "2,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&schema("kn.schema.json"), &doc);
    assert_eq!(
        (doc["count"].as_u64(), doc["dimension"].as_u64()),
        (Some(16), Some(16))
    );
    let out = hlbc(&["kn", "-t", "C", "-n", "3", "-l", "3,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("512 fillings with N = 0, dimension 512"));
}

#[test]
fn emitted_lines_match_schemas() {
    let dir = std::env::temp_dir().join(format!("hlbc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pairs = dir.join("pairs.jsonl");
    let fillings = dir.join("fillings.jsonl");
    let out = hlbc(&[
        "compute",
        "-t",
        "C",
        "-n",
        "2",
        "-l",
        "2,1",
        "--emit-pairs",
        pairs.to_str().unwrap(),
        "--emit-fillings",
        fillings.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for (path, name, count) in [
        (&pairs, "pair.schema.json", 70),
        (&fillings, "filling.schema.json", 27),
    ] {
        let validator = schema(name);
        let text = std::fs::read_to_string(path).unwrap();
        assert_eq!(text.lines().count(), count);
        for line in text.lines() {
            assert_valid(&validator, &serde_json::from_str(line).unwrap());
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dump_chain_format() {
    let out = hlbc(&["dump-chain", "-t", "B", "-n", "2", "-l", "2,1"]);
    assert_eq!(
        stdout(&out),
        "(1)\n|\n(1,-2)\n(1)\n(1,2)\n||\n(1)\n|\n(1,-2)\n(2)\n"
    );
}

#[test]
fn fibers_and_compressed_fiber() {
    let out = hlbc(&[
        "fibers", "-t", "C", "-n", "2", "-l", "2,1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&schema("fibers.schema.json"), &doc);
    let out = hlbc(&[
        "fibers",
        "-t",
        "C",
        "-n",
        "2",
        "-l",
        "3,2",
        "--compressed",
        "[[-2],[-2],[-2,-1],[-2,-1],[1,2],[1,2]]",
    ]);
    let text = stdout(&out);
    assert!(text.contains("sum: 1 - 2t + 2t^2 - t^3"), "{text}");
    assert!(text.contains("single product t^a(1-t)^b: false"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = [
        "verify", "-t", "C", "-n", "3", "-l", "3,2,1", "--checks", "fibers", "--format", "json",
    ];
    let one = hlbc(&[&["--threads", "1"][..], &args[..]].concat());
    let four = hlbc(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
