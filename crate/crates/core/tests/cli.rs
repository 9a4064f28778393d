use std::path::Path;
use std::process::{Command, Output};

use instanton_core::cli::{rows_from_csv, SweepRow, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};

fn instanton(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_instanton"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kink_reports_the_asymptotic_action() {
    let o = instanton(&["kink"]);
    assert_eq!(code(&o), EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["action"].as_f64().unwrap() - 0.942_809_0).abs() < 1e-7);
    assert_eq!(v["L"], "infinite");
    assert!((v["omega_tunnel"].as_f64().unwrap() - 0.522_703_964_410_409_4).abs() < 1e-12);
}

#[test]
fn csv_and_json_sweeps_agree() {
    let common = ["sweep", "--sweep", "8,16,3", "--grid", "1024"];
    let csv = instanton(&[&common[..], &["--format", "csv"]].concat());
    let json = instanton(&[&common[..], &["--format", "json"]].concat());
    assert_eq!(code(&csv), EXIT_OK);
    assert_eq!(code(&json), EXIT_OK);
    let a = rows_from_csv(&stdout(&csv)).unwrap();
    let b: Vec<SweepRow> = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(a.len(), 3);
    assert_eq!(a, b);
    assert_eq!(a[0].size, 8.0);
    assert_eq!(a[2].size, 16.0);
}

#[test]
fn runs_are_bit_identical_across_worker_counts() {
    let args = [
        "sweep",
        "--sweep",
        "6,14,4",
        "--spacing",
        "linear",
        "--grid",
        "1024",
        "--format",
        "csv",
    ];
    let one = instanton(&[&args[..], &["--workers", "1"]].concat());
    let many = instanton(&[&args[..], &["--workers", "4"]].concat());
    let again = instanton(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(many.stdout, again.stdout);
}

#[test]
fn config_file_with_flag_override_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"params": {"delta": 0.5}, "mode": "finite", "L": 10, "grid": 1024}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = instanton(&[
        "finite",
        "--config",
        cfg.to_str().unwrap(),
        "--L",
        "12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), EXIT_OK, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["L"].as_f64(), Some(12.0));
    assert_eq!(v["params"]["delta"].as_f64(), Some(0.5));
    assert!(v["omega_tunnel"].as_f64().unwrap() > 0.0);
}

#[test]
fn configuration_errors_exit_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"mode": "finite", "L": 10, "colour": "blue"}"#).unwrap();
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["finite"],
        vec!["finite", "--L", "5", "--temperature", "0.2"],
        vec!["sweep", "--sweep", "9,3,4"],
        vec!["kink", "--delta", "-1"],
        vec!["finite", "--config", bad.to_str().unwrap()],
        vec!["finite", "--config", missing.to_str().unwrap()],
    ] {
        let o = instanton(&args);
        assert_eq!(code(&o), EXIT_CONFIG, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_ne!(code(&instanton(&["bogus-mode"])), EXIT_OK);
}

#[test]
fn unsolvable_points() {
    let o = instanton(&["finite", "--L", "0.01"]);
    assert_eq!(code(&o), EXIT_NUMERICAL);
    // inside a sweep the failure is recorded in the row and the run continues
    let o = instanton(&[
        "sweep",
        "--sweep",
        "0.01,10,3",
        "--grid",
        "1024",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let rows = rows_from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert_ne!(rows[0].status, "ok");
    assert!(rows[0].omega_tunnel.is_none());
    assert!(rows[1..]
        .iter()
        .all(|r| r.status == "ok" && r.omega_tunnel.is_some()));
}

#[test]
fn temperature_sweep_is_ordered_by_size() {
    let o = instanton(&[
        "sweep",
        "--sweep",
        "0.05,0.2,3",
        "--sweep-variable",
        "temperature",
        "--grid",
        "1024",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let rows = rows_from_csv(&stdout(&o)).unwrap();
    let sizes: Vec<f64> = rows.iter().map(|r| r.size).collect();
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    assert!(
        (sizes[0] - 5.0).abs() < 1e-12 && (sizes[2] - 20.0).abs() < 1e-12,
        "{sizes:?}"
    );
}

#[test]
fn validate_prints_one_line_per_check() {
    let o = instanton(&["validate", "--format", "csv", "--grid", "2048"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.contains("criterion")).collect();
    assert_eq!(lines.len(), 8, "{text}");
    assert!(lines
        .iter()
        .all(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")));
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    assert_eq!(code(&o), if all_pass { EXIT_OK } else { EXIT_NUMERICAL });
    assert!(Path::new(env!("CARGO_BIN_EXE_instanton")).exists());
}
