use std::process::Command;

use irs_noma::harness::{read_results, OutputFormat};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irs-noma"))
}

fn run_ok(args: &[&str]) -> Vec<u8> {
    let out = bin().args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

const SWEEP: &[&str] = &[
    "sweep", "--mode", "noma-robust,fdma,tdma", "--sweep-var", "M", "--sweep-values", "0,6",
    "--trials", "4", "--seed", "11",
];

#[test]
fn sweep_is_reproducible_across_workers() {
    let one = run_ok(&[SWEEP, &["--workers", "1"]].concat());
    let four = run_ok(&[SWEEP, &["--workers", "4"]].concat());
    assert_eq!(one, four);
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("trial,mode,phase_mode,swept_var,swept_value,R1,R2,Rsum,"));
    assert_eq!(text.lines().count(), 1 + 2 * 3 * 4);
}

#[test]
fn sweep_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    run_ok(&[SWEEP, &["--format", "json", "--out", path.to_str().unwrap()]].concat());
    let rows = read_results(&path, OutputFormat::Json).unwrap();
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| r.rsum.is_finite() && r.rsum >= 0.0));
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# scenario\nmode = fdma\nM = 4\ntrials = 2\nsweep-values = 4\n").unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = String::from_utf8(run_ok(&["sweep", "--config", c])).unwrap();
    assert_eq!(from_file.lines().count(), 3);
    assert!(from_file.lines().skip(1).all(|l| l.contains(",fdma,")));
    let overridden = String::from_utf8(run_ok(&["sweep", "--config", c, "--mode", "tdma"])).unwrap();
    assert!(overridden.lines().skip(1).all(|l| l.contains(",tdma,")));
}

#[test]
fn solve_prints_one_object_per_mode() {
    let out = run_ok(&["solve", "--mode", "noma-robust,tdma", "--M", "6", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    for o in arr {
        let rsum = o["Rsum"].as_f64().unwrap();
        assert!((rsum - o["R1"].as_f64().unwrap() - o["R2"].as_f64().unwrap()).abs() < 1e-9);
        assert!(!o["trajectory"].as_array().unwrap().is_empty());
    }
    assert_eq!(arr[0]["channel_hash"], arr[1]["channel_hash"]);
}

#[test]
fn complexity_table_lists_every_scheme() {
    let text = String::from_utf8(run_ok(&["complexity", "--M", "20"])).unwrap();
    for scheme in ["pdd-continuous", "pdd-trellis", "pdd-quantize", "pdd-exhaustive", "sdr-baseline"] {
        assert!(text.contains(scheme), "{text}");
    }
}

#[test]
fn bad_input_is_a_config_error() {
    let out = bin().args(["sweep", "--mode", "cdma"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["sweep", "--config", "/nonexistent/file.cfg"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
