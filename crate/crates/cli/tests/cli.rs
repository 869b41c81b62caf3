//! End-to-end tests against the compiled binary: output goldens, exit
//! codes, and byte-level determinism of the CSV surface.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover-noise"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn bound_prints_the_three_closed_forms() {
    let cases = [
        (
            ["bound", "phase", "1e-2"],
            "N_max: 80000\nlog2(N_max): 16.2877123795\n",
        ),
        (
            ["bound", "hadamard", "1e-3"],
            "N_max: 405284.734569\nlog2(N_max): 18.6285763104\n",
        ),
        (
            ["bound", "combined", "2e-2"],
            "N_max: 160000\nlog2(N_max): 17.2877123795\n",
        ),
    ];
    for (args, expected) in cases {
        let output = run(&args);
        assert!(output.status.success(), "{args:?} failed");
        assert_eq!(stdout_of(&output), expected, "{args:?}");
    }
}

#[test]
fn bound_rejects_a_nonpositive_magnitude() {
    let output = run(&["bound", "phase", "0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sweep_emits_deterministic_csv_to_stdout() {
    let args = [
        "sweep", "--em2", "--s", "1e-2", "--n", "4..=8", "--samples", "8", "--seed", "5",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let text = stdout_of(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,N,model,param1,param2,samples,mean_pmax,std_pmax,min_pmax,max_pmax,mean_j_opt,seed"
    );
    assert_eq!(lines.len(), 6, "header plus one row per register size");
    assert!(lines[1].starts_with("4,16,EM2,0,0.01,8,"));
    assert_eq!(first.stdout, run(&args).stdout, "reruns must be byte-identical");
}

#[test]
fn sweep_writes_the_same_bytes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let base = ["sweep", "--em1", "--delta0", "1e-2", "--n", "4..6"];
    let to_stdout = run(&base);
    assert!(to_stdout.status.success());
    let mut to_file = base.to_vec();
    to_file.extend(["--out", path.to_str().unwrap()]);
    let written = run(&to_file);
    assert!(written.status.success());
    assert!(written.stdout.is_empty(), "file mode keeps stdout clean");
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    // Half-open 4..6 covers two sizes.
    assert_eq!(stdout_of(&to_stdout).lines().count(), 3);
}

#[test]
fn sweep_usage_errors_exit_2() {
    // No model flag.
    assert_eq!(run(&["sweep", "--n", "4"]).status.code(), Some(2));
    // Two model flags.
    assert_eq!(
        run(&["sweep", "--em1", "--em2", "--delta0", "1e-2", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    // Missing the model's parameter.
    assert_eq!(run(&["sweep", "--em1", "--n", "4"]).status.code(), Some(2));
    // Parameter from a different model.
    assert_eq!(
        run(&["sweep", "--em1", "--delta0", "1e-2", "--s", "0.5", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    // Empty size range.
    assert_eq!(
        run(&["sweep", "--em1", "--delta0", "1e-2", "--n", "4..4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_domain_errors_exit_1() {
    // The leakage caricature has no full-register counterpart.
    let output = run(&[
        "sweep", "--leak", "--delta1", "1e-3", "--engine", "full", "--n", "4..=8",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("error:"));
    // Mixing offset outside (-pi/4, pi/4).
    assert_eq!(
        run(&["sweep", "--hsys", "--epsilon", "1.0", "--n", "4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn validate_passes_and_bounds_its_arguments() {
    let output = run(&["validate", "--trials", "4", "--max-n", "8", "--seed", "3"]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert!(stdout_of(&output).contains("validated 4 random configurations"));
    assert_eq!(run(&["validate", "--max-n", "14"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn figure_writes_one_deterministic_file_per_setting() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let output = run(&["figure", "constant-mismatch", "--out-dir", out_dir]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let expected = [
        "em1_d0_0.01.csv",
        "em1_d0_0.001.csv",
        "em1_d0_0.0001.csv",
    ];
    for name in expected {
        assert!(Path::new(out_dir).join(name).is_file(), "{name} missing");
    }
    let listed = stdout_of(&output);
    for name in expected {
        assert!(listed.contains(name), "stdout should list {name}");
    }
    // A rerun reproduces the files byte for byte.
    let before = std::fs::read(Path::new(out_dir).join(expected[0])).unwrap();
    assert!(run(&["figure", "constant-mismatch", "--out-dir", out_dir])
        .status
        .success());
    assert_eq!(
        std::fs::read(Path::new(out_dir).join(expected[0])).unwrap(),
        before
    );
}
