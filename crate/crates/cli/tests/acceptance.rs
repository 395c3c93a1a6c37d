//! End-to-end checks of the `xmodkit` binary: deterministic reports,
//! exit-code contract, and payload round-trips against the manifest.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use xmodkit_cli::payload::{ClassifyPayload, ReducePayload};
use xmodkit_core::cohomology::GModule;
use xmodkit_core::group::{Action, FiniteGroup};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xmodkit"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary spawns")
}

/// Raw report text with the timing line pinned to zero, so byte
/// comparison ignores only the timing field.
fn zero_timing(stdout: &[u8]) -> String {
    let text = String::from_utf8(stdout.to_vec()).expect("reports are UTF-8");
    text.lines()
        .map(|line| {
            if line.trim_start().starts_with("\"timing_ms\":") {
                let indent = &line[..line.len() - line.trim_start().len()];
                format!("{indent}\"timing_ms\": 0")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn report(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON report")
}

#[test]
fn acceptance_10_cli_determinism() {
    let manifest = data("fixtures.json");
    let manifest = manifest.to_str().unwrap();

    let mut cases: Vec<Vec<String>> = Vec::new();
    for xm in ["identity", "zero", "doubling", "twisted"] {
        cases.push(
            ["reduce", manifest, "--name", xm]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        );
    }
    for kernel in ["k_identity", "k_zero", "k_doubling", "k_twisted"] {
        cases.push(
            ["classify", manifest, "--name", kernel]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        );
    }

    let mut checked = 0;
    for case in &cases {
        let args: Vec<&str> = case.iter().map(|s| s.as_str()).collect();
        let first = run(&args, "1");
        let second = run(&args, "1");
        let threaded = run(&args, "4");
        for output in [&first, &second, &threaded] {
            assert!(
                output.status.success(),
                "{case:?} failed: {}",
                String::from_utf8_lossy(&output.stderr)
            );
        }
        let a = zero_timing(&first.stdout);
        let b = zero_timing(&second.stdout);
        let c = zero_timing(&threaded.stdout);
        assert_eq!(a, b, "{case:?} differs between identical runs");
        assert_eq!(a, c, "{case:?} differs across thread counts");
        assert!(report(&first)["status"] == "ok");
        checked += 1;
    }

    println!(
        "ACCEPTANCE 10: PASS — {checked} reduce/classify reports byte-identical \
         (modulo timing) across repeated runs and thread counts"
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let fixtures = data("fixtures.json");
    let fixtures = fixtures.to_str().unwrap();
    let corrupted = data("corrupted.json");
    let corrupted = corrupted.to_str().unwrap();

    // 0: clean validation.
    let ok = run(&["check", fixtures, "--name", "twisted"], "1");
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(report(&ok)["payload"]["valid"], true);

    // 1: semantic failure, witness in the report.
    let bad = run(&["check", corrupted, "--name", "broken"], "1");
    assert_eq!(bad.status.code(), Some(1));
    let body: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(body["status"], "fail");
    let message = body["payload"]["error"].as_str().unwrap();
    assert!(
        message.contains("witness pair (1, 1)"),
        "missing witness: {message}"
    );

    // 2: unresolved name.
    let missing = run(&["check", fixtures, "--name", "nonexistent"], "1");
    assert_eq!(missing.status.code(), Some(2));

    // 2: malformed manifest.
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "{}").unwrap();
    let malformed = run(&["check", empty.to_str().unwrap(), "--name", "x"], "1");
    assert_eq!(malformed.status.code(), Some(2));

    // 3: exhausted budget.
    let starved = run(
        &["classify", fixtures, "--name", "k_zero", "--budget", "0"],
        "1",
    );
    assert_eq!(starved.status.code(), Some(3));
    let body: serde_json::Value = serde_json::from_slice(&starved.stdout).unwrap();
    assert!(body["payload"]["error"]
        .as_str()
        .unwrap()
        .contains("budget"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let fixtures = data("fixtures.json");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = run(
        &[
            "reduce",
            fixtures.to_str().unwrap(),
            "--name",
            "zero",
            "--out",
            out.to_str().unwrap(),
        ],
        "1",
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(body["status"], "ok");
    assert_eq!(body["command"], "reduce");
}

#[test]
fn reduce_payloads_reparse_and_revalidate() {
    let fixtures = data("fixtures.json");
    for name in ["identity", "zero", "doubling", "twisted"] {
        let output = run(&["reduce", fixtures.to_str().unwrap(), "--name", name], "1");
        let body = report(&output);
        let payload: ReducePayload = serde_json::from_value(body["payload"].clone()).unwrap();

        // Rebuild the module from the serialized groups and action, then
        // the cocycle from its sparse entries; everything must validate.
        let pi0 = FiniteGroup::from_table(&payload.pi0.table).unwrap();
        let pi1 = FiniteGroup::from_table(&payload.pi1.table).unwrap();
        let action = Action::new(pi0.clone(), pi1.clone(), payload.action.clone()).unwrap();
        let module = GModule::new(pi0, pi1, action).unwrap();
        let k = payload.k.rebuild(&module).unwrap();
        assert!(k.is_cocycle(), "{name}: reconstructed k is a cocycle");
        assert!(payload.is_cocycle);
        let rep = payload.k_class_representative.rebuild(&module).unwrap();
        assert!(rep.is_cocycle());
    }
}

#[test]
fn classify_payloads_reparse_and_revalidate() {
    let fixtures = data("fixtures.json");
    let manifest = xmodkit_cli::manifest::Manifest::load(&fixtures).unwrap();
    for name in ["k_identity", "k_zero", "k_doubling"] {
        let output = run(&["classify", fixtures.to_str().unwrap(), "--name", name], "1");
        let body = report(&output);
        let payload: ClassifyPayload = serde_json::from_value(body["payload"].clone()).unwrap();
        let kernel = manifest.kernel(name).unwrap();
        for rep in &payload.representatives {
            rep.rebuild(&kernel)
                .expect("serialized representative revalidates as a ζ-extension");
        }
        assert_eq!(
            payload.inequivalent_pairs.len(),
            payload.representatives.len() * payload.representatives.len().saturating_sub(1) / 2
        );
    }
}

#[test]
fn seeded_sticks_report_the_same_class() {
    let fixtures = data("fixtures.json");
    let fixtures = fixtures.to_str().unwrap();
    let canonical = report(&run(&["reduce", fixtures, "--name", "twisted"], "1"));
    for seed in ["seed:1", "seed:2", "seed:3"] {
        let seeded = report(&run(
            &["reduce", fixtures, "--name", "twisted", "--stick", seed],
            "1",
        ));
        assert_eq!(
            seeded["payload"]["k_class_representative"],
            canonical["payload"]["k_class_representative"],
            "stick {seed} lands in a different class"
        );
    }
}
