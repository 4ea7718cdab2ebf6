//! End-to-end tests of the `distparts` binary: documented example outputs,
//! exit-code contract, format stability, cache behaviour, and flag
//! plumbing. Each test drives the compiled binary through its public
//! interface only.

use std::path::PathBuf;
use std::process::Command;

/// Working precision never comes from the ambient environment in tests.
fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_distparts"));
    cmd.env_remove("DISTPARTS_PRECISION");
    cmd
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    run_with(bin(), args)
}

fn run_with(mut cmd: Command, args: &[&str]) -> Run {
    let out = cmd.args(args).output().expect("binary spawns");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn json_of(run: &Run) -> serde_json::Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}):\n{}", run.stdout);
    })
}

fn scratch_dir(label: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "distparts-cli-it-{label}-{}",
        std::process::id()
    ));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn dvalue_prints_documented_examples() {
    for (args, want) in [
        (vec!["dvalue", "--r", "1", "--t", "2", "--n", "5"], "3"),
        (vec!["dvalue", "--r", "1", "--t", "1", "--n", "6"], "8"),
        (vec!["dvalue", "--r", "3", "--t", "3", "--n", "0"], "0"),
    ] {
        let res = run(&args);
        assert_eq!(res.code, 0, "stderr: {}", res.stderr);
        assert_eq!(res.stdout.trim(), want, "args: {args:?}");
    }
    // All three evaluation routes agree, and the non-JSON formats keep
    // the bare-integer contract.
    for extra in [
        vec!["--method", "table"],
        vec!["--method", "brute"],
        vec!["--format", "md"],
        vec!["--format", "csv"],
    ] {
        let mut args = vec!["dvalue", "--r", "1", "--t", "2", "--n", "5"];
        args.extend(extra);
        assert_eq!(run(&args).stdout.trim(), "3", "args: {args:?}");
    }
}

#[test]
fn dvalue_json_envelope_round_trips() {
    let res = run(&[
        "dvalue", "--r", "1", "--t", "2", "--n", "5", "--format", "json",
    ]);
    assert_eq!(res.code, 0);
    let env = json_of(&res);
    assert_eq!(env["command"], "dvalue");
    assert_eq!(env["parameters"]["r"], "1");
    assert_eq!(env["parameters"]["t"], "2");
    assert_eq!(env["parameters"]["n"], "5");
    assert_eq!(env["parameters"]["method"], "single");
    assert_eq!(env["precision_bits"], 256);
    assert_eq!(env["results"]["d"], "3");
    assert_eq!(env["warnings"], serde_json::json!([]));
    // Parse → re-serialize reproduces the exact bytes (sorted maps,
    // pre-rendered numerics), the strongest round-trip form.
    assert_eq!(
        serde_json::to_string_pretty(&env).expect("serializes"),
        res.stdout.trim_end()
    );
}

#[test]
fn invalid_arguments_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        // Residue outside the modulus.
        vec!["dvalue", "--r", "3", "--t", "2", "--n", "5"],
        // Missing required flag (clap-level).
        vec!["dvalue", "--r", "1", "--t", "2"],
        // Unknown lemma name.
        vec!["arc-check", "--lemma", "bogus"],
        // Class flags must come as a pair.
        vec!["arc-check", "--lemma", "l-minor", "--t", "2"],
        // A class-sum lemma needs a class.
        vec!["arc-check", "--lemma", "l-major-abs", "--samples", "5"],
        // Modulus range errors.
        vec!["table2", "--tmin", "1", "--tmax", "2"],
        vec!["table2", "--tmin", "5", "--tmax", "3"],
        // Below the decomposition's hypothesis floor.
        vec!["check-effective", "--r", "1", "--t", "2", "--n", "100"],
        // Flag conflict (clap-level).
        vec![
            "verify-corollary", "--t", "2", "--exhaustive-to", "100", "--full",
        ],
        // Precision outside the supported range.
        vec!["dvalue", "--r", "1", "--t", "2", "--n", "5", "--precision", "32"],
    ];
    for args in cases {
        let res = run(&args);
        assert_eq!(res.code, 2, "args: {args:?}\nstderr: {}", res.stderr);
    }
    // Malformed environment default.
    let mut cmd = bin();
    cmd.env("DISTPARTS_PRECISION", "banana");
    let res = run_with(cmd, &["dvalue", "--r", "1", "--t", "2", "--n", "5"]);
    assert_eq!(res.code, 2);
    assert!(res.stderr.contains("DISTPARTS_PRECISION"));
}

#[test]
fn capacity_limits_exit_3() {
    // Brute-force oracle cap.
    let res = run(&[
        "dvalue", "--r", "1", "--t", "2", "--n", "100", "--method", "brute",
    ]);
    assert_eq!(res.code, 3, "stderr: {}", res.stderr);
    // Series length cap (fails fast, before any convolution).
    let res = run(&["scan-counterexamples", "--t", "2", "--nmax", "2000001"]);
    assert_eq!(res.code, 3, "stderr: {}", res.stderr);
}

#[test]
fn table1_reproduces_reference_cells() {
    let res = run(&["table1", "--nmax", "1000", "--format", "csv"]);
    assert_eq!(res.code, 0, "stderr: {}", res.stderr);
    for row in [
        "1,10,1.159706,1.159706,true",
        "1,1000,1.001068,1.001068,true",
        "2,10,0.904238,0.904238,true",
        "2,1000,1.001204,1.001204,true",
        "3,100,1.008440,1.008440,true",
        "3,1000,1.001641,1.001641,true",
    ] {
        assert!(res.stdout.contains(row), "missing row {row} in:\n{}", res.stdout);
    }
    // Markdown rendering carries the same six-decimal cells.
    let md = run(&["table1", "--nmax", "100", "--format", "md"]);
    assert_eq!(md.code, 0);
    assert!(md.stdout.contains("| 1 | 1.159706 | 1.002613 |"));
}

#[test]
fn table2_reproduces_the_first_threshold() {
    let res = run(&["table2", "--tmin", "2", "--tmax", "2"]);
    assert_eq!(res.code, 0, "stderr: {}", res.stderr);
    assert!(res.stdout.contains("| 2 | 108077 |"), "{}", res.stdout);
    assert!(res.stdout.contains("stability window: 1000"));

    let json = run(&["table2", "--tmin", "2", "--tmax", "2", "--format", "json"]);
    assert_eq!(json.code, 0);
    let env = json_of(&json);
    assert_eq!(env["results"]["all_match"], true);
    assert_eq!(env["results"]["rows"][0]["n_t"], 108_077);
    assert_eq!(env["results"]["rows"][0]["matches_reference"], true);
}

#[test]
fn scan_counterexamples_lists_the_known_small_patterns() {
    let res = run(&[
        "scan-counterexamples", "--t", "4", "--nmax", "100", "--format", "json",
    ]);
    assert_eq!(res.code, 0, "stderr: {}", res.stderr);
    let env = json_of(&res);
    // For t = 4 the complete list: (1,2,2), (2,3,4), (2,4,4). The pair
    // (3,4) first demotes at n = 7 only from t = 5 on — at t = 4 the part
    // 7 is itself ≡ 3 (mod 4) and closes the gap to a tie.
    assert_eq!(
        env["results"]["counterexamples"],
        serde_json::json!([
            { "n": 2, "r": 1, "s": 2 },
            { "n": 4, "r": 2, "s": 3 },
            { "n": 4, "r": 2, "s": 4 },
        ])
    );
    assert_eq!(env["results"]["count"], 3);
    assert_eq!(env["results"]["max_n"], 4);
}

#[test]
fn verify_corollary_passes_at_reduced_scale() {
    let res = run(&[
        "verify-corollary", "--t", "2", "--exhaustive-to", "300", "--format", "json",
        // The acknowledgement flag is accepted (and irrelevant) for a
        // short run.
        "--i-understand-long-run",
    ]);
    assert_eq!(res.code, 0, "stderr: {}", res.stderr);
    let env = json_of(&res);
    assert_eq!(env["results"]["n_t"], 108_077);
    assert_eq!(env["results"]["passes"], true);
    assert_eq!(env["results"]["full_reproduction"], false);
    assert_eq!(
        env["results"]["counterexamples"],
        serde_json::json!([{ "n": 2, "r": 1, "s": 2 }])
    );
    assert_eq!(env["parameters"]["exhaustive_to"], "300");
}

#[test]
fn long_runs_require_explicit_acknowledgement() {
    let res = run(&["verify-corollary", "--t", "2", "--exhaustive-to", "60000"]);
    assert_eq!(res.code, 2);
    assert!(res.stderr.contains("--i-understand-long-run"), "{}", res.stderr);

    let res = run(&["verify-corollary", "--t", "2", "--full"]);
    assert_eq!(res.code, 2);
    assert!(res.stderr.contains("--i-understand-long-run"), "{}", res.stderr);
}

#[test]
fn arc_check_accepts_underscore_lemma_names() {
    let res = run(&[
        "arc-check", "--lemma", "l_minor", "--samples", "50", "--t", "2", "--r", "1",
    ]);
    assert_eq!(res.code, 0, "stderr: {}", res.stderr);
    let env = json_of(&res);
    assert_eq!(env["parameters"]["lemma"], "l-minor");
    assert_eq!(env["parameters"]["samples"], "50");
    assert_eq!(env["results"]["holds_all"], true);
    assert_eq!(env["results"]["checks"].as_array().map(Vec::len), Some(50));
}

#[test]
fn cache_round_trips_and_survives_stale_files() {
    let dir = scratch_dir("cache");
    let dir_s = dir.to_str().expect("utf-8 temp path");
    let args = [
        "dvalue", "--r", "1", "--t", "3", "--n", "200", "--method", "table",
        "--cache-dir", dir_s,
    ];
    let cold = run(&args);
    assert_eq!(cold.code, 0, "stderr: {}", cold.stderr);
    let file = dir.join(format!("dtable-v{}-r1-t3-n200.txt", env!("CARGO_PKG_VERSION")));
    assert!(file.exists(), "cache file written");
    let warm = run(&args);
    assert_eq!(warm.stdout, cold.stdout);
    assert!(warm.stderr.is_empty(), "clean reuse: {}", warm.stderr);

    // A file from another version is ignored, recomputed, overwritten.
    let stale = std::fs::read_to_string(&file)
        .expect("readable cache")
        .replacen(concat!("v", env!("CARGO_PKG_VERSION")), "v0.0.9", 1);
    std::fs::write(&file, stale).expect("writable cache");
    let healed = run(&args);
    assert_eq!(healed.stdout, cold.stdout);
    assert!(healed.stderr.contains("ignored cache file"), "{}", healed.stderr);
    assert!(std::fs::read_to_string(&file)
        .expect("readable cache")
        .starts_with(concat!("distparts-cache v", env!("CARGO_PKG_VERSION"), " ")));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn poisoned_cache_data_fails_the_table_check_loudly() {
    let dir = scratch_dir("poison");
    let dir_s = dir.to_str().expect("utf-8 temp path");
    let args = ["table1", "--nmax", "10", "--format", "json", "--cache-dir", dir_s];
    let honest = run(&args);
    assert_eq!(honest.code, 0, "stderr: {}", honest.stderr);

    // Corrupt one cached value while keeping the file well-formed: the
    // cache is storage, not proof, so the table command must catch the
    // lie against its pinned references and refuse to exit 0.
    let file = dir.join(format!("dtable-v{}-r1-t3-n10.txt", env!("CARGO_PKG_VERSION")));
    let mut lines: Vec<String> = std::fs::read_to_string(&file)
        .expect("readable cache")
        .lines()
        .map(str::to_owned)
        .collect();
    *lines.last_mut().expect("has coefficients") = "999999".to_owned();
    std::fs::write(&file, lines.join("\n") + "\n").expect("writable cache");

    let poisoned = run(&args);
    assert_eq!(poisoned.code, 1, "stdout: {}", poisoned.stdout);
    let env = json_of(&poisoned);
    assert_eq!(env["results"]["all_match"], false);
    let warnings = env["warnings"].as_array().expect("warnings array");
    assert!(
        warnings.iter().any(|w| w
            .as_str()
            .is_some_and(|w| w.contains("deviates from the pinned reference"))),
        "{warnings:?}"
    );
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn json_outputs_are_byte_stable_and_self_round_trip() {
    for args in [
        vec!["dvalue", "--r", "2", "--t", "5", "--n", "30", "--format", "json"],
        vec!["scan-counterexamples", "--t", "3", "--nmax", "200"],
        vec!["arc-check", "--lemma", "xi-minor", "--samples", "10"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.code, 0, "args: {args:?}\nstderr: {}", first.stderr);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        let env = json_of(&first);
        assert_eq!(
            serde_json::to_string_pretty(&env).expect("serializes"),
            first.stdout.trim_end(),
            "args: {args:?}"
        );
    }
}

#[test]
fn precision_comes_from_flag_then_environment() {
    let mut cmd = bin();
    cmd.env("DISTPARTS_PRECISION", "128");
    let res = run_with(cmd, &["dvalue", "--r", "1", "--t", "2", "--n", "5", "--format", "json"]);
    assert_eq!(json_of(&res)["precision_bits"], 128);

    let mut cmd = bin();
    cmd.env("DISTPARTS_PRECISION", "128");
    let res = run_with(
        cmd,
        &[
            "dvalue", "--r", "1", "--t", "2", "--n", "5", "--format", "json",
            "--precision", "512",
        ],
    );
    assert_eq!(json_of(&res)["precision_bits"], 512);
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["scan-counterexamples", "--t", "6", "--nmax", "400"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let four = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
}

#[cfg(unix)]
#[test]
fn closed_pipe_truncates_output_without_a_panic() {
    use std::process::Stdio;

    // ~500 grid points of JSON comfortably exceed the kernel pipe buffer,
    // so the writer must hit the closed read end mid-stream.
    let mut child = bin()
        .args([
            "arc-check",
            "--lemma",
            "l-minor",
            "--r",
            "1",
            "--t",
            "2",
            "--samples",
            "500",
            "--format",
            "json",
        ])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());

    let out = child.wait_with_output().expect("child reaped");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        !stderr.contains("panicked"),
        "broken pipe must not panic:\n{stderr}"
    );
    assert_ne!(out.status.code(), Some(0), "truncated run is not a success");
}
