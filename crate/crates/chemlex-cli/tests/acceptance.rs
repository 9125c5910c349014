//! CLI acceptance: every subcommand run twice with the same seed yields
//! byte-identical artifacts, at parallelism 1 and 8; manifests agree up
//! to their timestamp field. Plus the exit-code contract.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Output;

use tempfile::TempDir;

fn chemlex(args: &[&str], dir: &Path) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_chemlex"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str], dir: &Path) {
    let out = chemlex(args, dir);
    assert!(
        out.status.success(),
        "chemlex {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Manifest bytes with the timestamp field normalized away.
fn manifest_normalized(path: &Path) -> serde_json::Value {
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    value.as_object_mut().unwrap().remove("timestamp_unix");
    value
}

struct Snapshot {
    artifacts: HashMap<PathBuf, Vec<u8>>,
    manifests: HashMap<PathBuf, serde_json::Value>,
}

fn snapshot(dir: &Path) -> Snapshot {
    let mut artifacts = HashMap::new();
    let mut manifests = HashMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if !path.is_file() {
            continue;
        }
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if name.ends_with(".manifest.json") {
            manifests.insert(path.clone(), manifest_normalized(&path));
        } else if !name.ends_with(".smi") && !name.ends_with(".csv.in") {
            artifacts.insert(path.clone(), fs::read(&path).unwrap());
        }
    }
    Snapshot {
        artifacts,
        manifests,
    }
}

fn write_inputs(dir: &Path) {
    let corpus = chemlex::synth::corpus(0xCAFE, 300);
    fs::write(dir.join("corpus.smi"), corpus.join("\n")).unwrap();

    let mut generated = chemlex::synth::corpus(0xBEEF, 150);
    generated.extend(
        ["C1CC", "CC)C", "c1cc1", "C(C)(C)(C)(C)C", "CC(C)", "C[C@@Hx]"]
            .iter()
            .map(|s| s.to_string()),
    );
    fs::write(dir.join("gen.smi"), generated.join("\n")).unwrap();

    let reference = chemlex::synth::corpus(0xFEED, 120);
    fs::write(dir.join("reference.smi"), reference.join("\n")).unwrap();

    let mut metrics = String::from("run_id,fold,repeat,metric,value\n");
    let mut x = 0.31f64;
    for run in ["m1-ais", "gpt-char", "m2-bpe"] {
        for fold in 0..5 {
            for repeat in 0..5 {
                x = (x * 97.0 + 13.7).fract();
                let mcc = 0.5 + 0.3 * x + if run == "m1-ais" { 0.1 } else { 0.0 };
                metrics.push_str(&format!("{run},{fold},{repeat},mcc,{mcc:.6}\n"));
            }
        }
    }
    fs::write(dir.join("metrics.csv.in"), metrics).unwrap();
}

/// One full pass over every subcommand, with a fixed parallelism degree.
fn run_pipeline(dir: &Path, parallel: &str) {
    let p = ["--parallel", parallel];
    let run = |args: &[&str]| {
        let mut full = args.to_vec();
        full.extend_from_slice(&p);
        run_ok(&full, dir);
    };

    run(&["standardize", "--in", "corpus.smi", "--out", "standardized.out", "--report", "standardize_report.json"]);
    run(&["validate", "--in", "gen.smi", "--out", "profile.json"]);
    run(&["errors", "--in", "gen.smi", "--out", "errors_table.out", "--json", "errors.json"]);
    run(&["train-bpe", "--in", "standardized.out", "--target-vocab", "90", "--vocab-out", "bpe_vocab.json", "--merges-out", "bpe_merges.txt"]);
    run(&["train-bpe", "--in", "gen.smi", "--target-vocab", "80", "--vocab-out", "bpe_vocab_b.json", "--merges-out", "bpe_merges_b.txt"]);
    run(&["encode", "--in", "standardized.out", "--scheme", "bpe", "--vocab", "bpe_vocab.json", "--merges", "bpe_merges.txt", "--max-len", "128", "--pad", "--out", "encoded_bpe.out"]);
    run(&["encode", "--in", "standardized.out", "--scheme", "char", "--out", "encoded_char.out"]);
    run(&["token-stats", "--in", "standardized.out", "--scheme", "char", "--out", "char_stats.json", "--freq-out", "char_freq.out"]);
    run(&["token-stats", "--in", "standardized.out", "--scheme", "bpe", "--vocab", "bpe_vocab.json", "--merges", "bpe_merges.txt", "--out", "bpe_stats.json"]);
    run(&["vocab-jaccard", "--a", "bpe_vocab.json", "--b", "bpe_vocab_b.json", "--out", "vocab_jaccard.json"]);
    run(&["scaffold", "--in", "standardized.out", "--out", "scaffolds_table.out"]);
    run(&["split", "--in", "standardized.out", "--mode", "scaffold", "--fractions", "0.8,0.1,0.1", "--seed", "7", "--out", "split_scaffold.out"]);
    run(&["split", "--in", "standardized.out", "--mode", "random", "--seed", "7", "--out", "split_random.out"]);
    run(&["index", "--in", "reference.smi", "--keys-out", "ref.keys", "--scaffolds-out", "ref.scaffolds"]);
    run(&["zipf", "--in", "ref.scaffolds", "--out", "zipf.json", "--csv", "zipf_table.out"]);
    run(&["index", "--in", "standardized.out", "--keys-out", "std.keys", "--scaffolds-out", "std.scaffolds"]);
    run(&["scaffold-jaccard", "--a", "ref.scaffolds", "--b", "std.scaffolds", "--out", "scaffold_jaccard.json"]);
    run(&["eval-gen", "--in", "gen.smi", "--ref-keys", "ref.keys", "--ref-scaffolds", "ref.scaffolds", "--out", "eval.json", "--csv", "eval_table.out", "--label", "demo", "--token-schemes", "char"]);
    run(&["cv-plan", "--mode", "random", "--count", "100", "--seed", "11", "--out", "cv_random.json"]);
    run(&["cv-plan", "--mode", "scaffold", "--in", "standardized.out", "--seed", "11", "--out", "cv_scaffold.json"]);
    run(&["metrics", "--in", "metrics.csv.in", "--out", "metric_summaries.json", "--csv", "metric_summaries.out"]);
    run(&["compare", "--in", "metrics.csv.in", "--metric", "mcc", "--out", "compare_matrix.out", "--json", "compare.json"]);
}

#[test]
fn criterion_10_determinism_across_runs_and_parallelism() {
    let dirs: Vec<TempDir> = (0..3).map(|_| TempDir::new().unwrap()).collect();
    for dir in &dirs {
        write_inputs(dir.path());
    }
    run_pipeline(dirs[0].path(), "1");
    run_pipeline(dirs[1].path(), "1");
    run_pipeline(dirs[2].path(), "8");

    let base = snapshot(dirs[0].path());
    assert!(base.artifacts.len() >= 20, "pipeline should leave artifacts");
    for other_dir in &dirs[1..] {
        let other = snapshot(other_dir.path());
        assert_eq!(base.artifacts.len(), other.artifacts.len());
        for (path, bytes) in &base.artifacts {
            let name = path.file_name().unwrap();
            let counterpart = other_dir.path().join(name);
            let other_bytes = other.artifacts.get(&counterpart).unwrap_or_else(|| {
                panic!("missing artifact {name:?} in rerun")
            });
            assert_eq!(
                bytes, other_bytes,
                "artifact {name:?} differs between runs"
            );
        }
        for (path, manifest) in &base.manifests {
            let name = path.file_name().unwrap();
            let counterpart = other_dir.path().join(name);
            assert_eq!(
                manifest,
                other.manifests.get(&counterpart).unwrap(),
                "manifest {name:?} differs beyond its timestamp"
            );
        }
    }
    println!("acceptance 10 (CLI determinism at parallelism 1 and 8): PASS");
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = TempDir::new().unwrap();
    write_inputs(dir.path());

    // 0: success
    let out = chemlex(
        &["validate", "--in", "gen.smi", "--out", "ok.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));

    // 1: usage error
    let out = chemlex(&["validate", "--frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = chemlex(&["no-such-subcommand"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    // 2: input I/O error
    let out = chemlex(
        &["validate", "--in", "missing.smi", "--out", "x.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // 3: domain error
    fs::write(dir.path().join("tiny.smi"), "CCO\n").unwrap();
    let out = chemlex(
        &["train-bpe", "--in", "tiny.smi", "--target-vocab", "2",
          "--vocab-out", "v.json", "--merges-out", "m.txt"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let out = chemlex(
        &["split", "--in", "tiny.smi", "--mode", "random", "--fractions", "2,3", "--out", "s.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_reports_rejections() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("two.smi"), "CCO\nC1CC\n").unwrap();
    run_ok(
        &["validate", "--in", "two.smi", "--out", "profile.json"],
        dir.path(),
    );
    let profile: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("profile.json")).unwrap())
            .unwrap();
    assert_eq!(profile["total"], 2);
    assert_eq!(profile["rejected"], 1);
    let categories = profile["categories"].as_array().unwrap();
    assert_eq!(categories.len(), 21);
    let ring = categories
        .iter()
        .find(|c| c["message"] == "N ring openings have not been closed")
        .unwrap();
    assert_eq!(ring["count"], 1);
    assert_eq!(ring["pct"], 100.0);
    assert_eq!(ring["long_range"], true);
}

#[test]
fn bpe_encoding_is_no_longer_than_char_encoding() {
    let dir = TempDir::new().unwrap();
    write_inputs(dir.path());
    run_ok(
        &["standardize", "--in", "corpus.smi", "--out", "std.smi2", "--report", "r.json"],
        dir.path(),
    );
    run_ok(
        &["train-bpe", "--in", "std.smi2", "--target-vocab", "120",
          "--vocab-out", "v.json", "--merges-out", "m.txt"],
        dir.path(),
    );
    run_ok(
        &["token-stats", "--in", "std.smi2", "--scheme", "bpe",
          "--vocab", "v.json", "--merges", "m.txt", "--out", "bpe.json"],
        dir.path(),
    );
    run_ok(
        &["token-stats", "--in", "std.smi2", "--scheme", "char", "--out", "char.json"],
        dir.path(),
    );
    let bpe: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("bpe.json")).unwrap()).unwrap();
    let ch: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("char.json")).unwrap()).unwrap();
    assert!(bpe["mean_len"].as_f64().unwrap() <= ch["mean_len"].as_f64().unwrap());
}

#[test]
fn split_plans_are_reproducible_files() {
    let dir = TempDir::new().unwrap();
    write_inputs(dir.path());
    for out in ["a.csv", "b.csv"] {
        run_ok(
            &["split", "--in", "corpus.smi", "--mode", "scaffold",
              "--fractions", "0.8,0.1,0.1", "--seed", "7", "--out", out],
            dir.path(),
        );
    }
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}
