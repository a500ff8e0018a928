//! End-to-end checks of the command-line binary: flag surface, file
//! formats, exit codes, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bssc"))
}

static FILE_COUNTER: AtomicU32 = AtomicU32::new(0);

fn scratch_path(tag: &str) -> PathBuf {
    let unique = FILE_COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!(
        "bssc-cli-test-{}-{unique}-{tag}",
        std::process::id()
    ))
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn codebook_m2_writes_sixty_rows() {
    let out = scratch_path("codebook.csv");
    let result = binary()
        .args(["codebook", "--m", "2", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(result.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 61, "header plus 60 data rows");
    std::fs::remove_file(&out).unwrap();
}

#[test]
fn encode_prints_the_hadamard_column() {
    let result = binary()
        .args(["encode", "--m", "1", "--id", "2"])
        .output()
        .unwrap();
    assert!(result.status.success());
    assert_eq!(
        stdout_of(&result),
        "0,0.7071067811865476,0\n1,0.7071067811865476,0\n"
    );
}

#[test]
fn encode_then_decode_round_trips() {
    for id in ["0", "17", "59"] {
        let encoded = binary()
            .args(["encode", "--m", "2", "--id", id])
            .output()
            .unwrap();
        assert!(encoded.status.success());
        let path = scratch_path("signal.csv");
        std::fs::write(&path, &encoded.stdout).unwrap();

        let decoded = binary()
            .args(["decode", "--m", "2", "--in"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(decoded.status.success());
        let line = stdout_of(&decoded);
        let value: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(value["id"], id.parse::<u64>().unwrap());

        // Multi-user mode with one user recovers the same codeword with a
        // unit coefficient.
        let multi = binary()
            .args(["decode", "--m", "2", "--users", "1", "--in"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(multi.status.success());
        let value: serde_json::Value =
            serde_json::from_str(stdout_of(&multi).trim()).unwrap();
        assert_eq!(value["id"], id.parse::<u64>().unwrap());
        assert!((value["coeff_re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        std::fs::remove_file(&path).unwrap();
    }
}

#[test]
fn decode_failure_exits_three() {
    let path = scratch_path("garbage.csv");
    std::fs::write(&path, "0,1,0\n1,0.5,0\n2,0.25,0\n3,0.125,0\n").unwrap();
    let result = binary()
        .args(["decode", "--m", "2", "--in"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&result.stderr).contains("decode failure"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn malformed_input_exits_two() {
    let path = scratch_path("malformed.csv");
    std::fs::write(&path, "0,1,0\n1,not-a-number,0\n2,0,0\n3,0,0\n").unwrap();
    let result = binary()
        .args(["decode", "--m", "2", "--in"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("bad re value"));
    std::fs::remove_file(&path).unwrap();

    let missing = scratch_path("missing.csv");
    std::fs::write(&missing, "0,1,0\n1,0,0\n2,0,0\n").unwrap();
    let result = binary()
        .args(["decode", "--m", "2", "--in"])
        .arg(&missing)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("missing index"));
    std::fs::remove_file(&missing).unwrap();
}

#[test]
fn unknown_flag_exits_two() {
    let result = binary()
        .args(["codebook", "--m", "2", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn unknown_kind_exits_two_without_output_file() {
    let out = scratch_path("never.csv");
    let result = binary()
        .args(["codebook", "--m", "2", "--kind", "sphere", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("unknown codebook kind"));
    assert!(!out.exists(), "failed run must not leave output");
}

#[test]
fn unwritable_output_exits_two() {
    let result = binary()
        .args([
            "codebook",
            "--m",
            "1",
            "--out",
            "/nonexistent-dir/cb.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("cannot write output"));
}

#[test]
fn simulate_reports_zero_errors_for_clean_single_users() {
    let out = scratch_path("stats.csv");
    let result = binary()
        .args([
            "simulate",
            "--m",
            "3",
            "--users",
            "1",
            "--trials",
            "100",
            "--seed",
            "7",
            "--codebook",
            "bssc",
            "--decoder",
            "structured",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert!(result.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "3");
    assert_eq!(fields[8], "0", "per-user error probability");
    std::fs::remove_file(&out).unwrap();
}

#[test]
fn simulate_output_is_byte_identical_across_thread_counts() {
    let args = [
        "simulate", "--m", "3", "--users", "2", "--trials", "150", "--seed", "42",
        "--codebook", "bssc", "--decoder", "structured",
    ];
    let out1 = scratch_path("stats-t1.csv");
    let out2 = scratch_path("stats-t2.csv");
    let run1 = binary()
        .args(args)
        .arg("--out")
        .arg(&out1)
        .env("BSSC_THREADS", "1")
        .output()
        .unwrap();
    let run2 = binary()
        .args(args)
        .arg("--out")
        .arg(&out2)
        .env("BSSC_THREADS", "2")
        .output()
        .unwrap();
    assert!(run1.status.success() && run2.status.success());
    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2);
    std::fs::remove_file(&out1).unwrap();
    std::fs::remove_file(&out2).unwrap();
}

#[test]
fn sweep_runs_a_grid_and_emits_svg() {
    let spec = scratch_path("sweep.spec");
    std::fs::write(
        &spec,
        "m = 2,3\nusers = 1,2\ntrials = 40\nseed = 5\ncodebook = bssc\ndecoder = structured\n",
    )
    .unwrap();
    let out = scratch_path("sweep.csv");
    let result = binary()
        .args(["sweep", "--format", "svg", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(result.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5, "header plus four grid rows");
    let svg_path = out.with_extension("svg");
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
    std::fs::remove_file(&spec).unwrap();
    std::fs::remove_file(&out).unwrap();
    std::fs::remove_file(&svg_path).unwrap();
}

#[test]
fn selftest_passes() {
    let result = binary().arg("selftest").output().unwrap();
    assert!(result.status.success());
    let text = stdout_of(&result);
    assert_eq!(text.matches("PASS").count(), 4);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("= 1/2"), "coherence value is reported");
}
