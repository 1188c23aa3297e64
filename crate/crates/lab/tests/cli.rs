use std::path::Path;
use std::process::{Command, Output};

use crt_lab::read_report_rows;

fn crt_lab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crt-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("CRT_LAB_OUT")
        .output()
        .expect("binary runs")
}

#[test]
fn passing_run_exits_zero_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rv");
    let o = crt_lab(&["root-volume", "--n", "256", "--replicas", "200"], &out);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for f in ["report.csv", "seeds.csv", "run.txt"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let rows = read_report_rows(&out.join("report.csv")).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.pass == Some(true)));
}

#[test]
fn statistical_failure_exits_one() {
    // a 256-point grid cannot resolve the smallest heat-kernel time
    let dir = tempfile::tempdir().unwrap();
    let o = crt_lab(
        &[
            "annealed-hk",
            "--n",
            "256",
            "--replicas",
            "3",
            "--marks",
            "8",
        ],
        &dir.path().join("hk"),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = crt_lab(&["no-such-experiment"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("root-volume"));

    let o = crt_lab(&["root-volume", "--n", "100"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("power of two"));

    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "replicas = lots\n").unwrap();
    let o = crt_lab(
        &["root-volume", "--config", cfg.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rv.cfg");
    std::fs::write(&cfg, "n = 128\nreplicas = 50\nseed = 7\n").unwrap();
    let out = dir.path().join("rv");
    let o = crt_lab(
        &[
            "root-volume",
            "--config",
            cfg.to_str().unwrap(),
            "--replicas",
            "60",
        ],
        &out,
    );
    assert_eq!(o.status.code(), Some(0));
    let seeds = std::fs::read_to_string(out.join("seeds.csv")).unwrap();
    assert_eq!(seeds.lines().count(), 61);
    assert_eq!(seeds.lines().nth(1).unwrap(), "0,7,0");
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "reroot-ks",
        "--n",
        "256",
        "--replicas",
        "300",
        "--seed",
        "11",
    ];
    let mut outputs = Vec::new();
    for (k, threads) in ["1", "1", "3"].into_iter().enumerate() {
        let out = dir.path().join(format!("run{k}"));
        let mut a = args.to_vec();
        a.extend(["--threads", threads]);
        let o = crt_lab(&a, &out);
        assert!(o.status.code().is_some_and(|c| c < 2));
        let report = std::fs::read(out.join("report.csv")).unwrap();
        let seeds = std::fs::read(out.join("seeds.csv")).unwrap();
        outputs.push((report, seeds));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}
