use std::fs;
use std::process::Command;

fn unot() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unot"))
}

fn sweep_to(path: &std::path::Path, extra: &[&str]) -> std::process::Output {
    let mut args = vec!["sweep", "--n-min", "1", "--n-max", "3", "--m-min", "1", "--m-max", "2", "--seed", "7"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    unot().args(&args).output().unwrap()
}

#[test]
fn csv_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    assert!(sweep_to(&path, &[]).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), include_str!("golden/sweep_small.csv"));
}

#[test]
fn json_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = unot()
        .args(["sweep", "--n-max", "2", "--m-max", "2", "--seed", "7", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), include_str!("golden/sweep_small.json"));
}

#[test]
fn monte_carlo_sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert!(sweep_to(&a, &["--samples", "20000"]).status.success());
    assert!(sweep_to(&b, &["--samples", "20000"]).status.success());
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().lines().next().unwrap().ends_with(",mc_fidelity_estimation,mc_stderr"));
}

#[test]
fn verify_exit_codes() {
    let ok = unot().args(["verify", "quick"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    let bad = unot().args(["verify", "quick", "--perturb-gamma", "1e-4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&bad.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("FAIL gamma-normalization")));
}

#[test]
fn usage_and_io_errors_exit_with_two() {
    let out = unot().args(["sweep", "--samples", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = unot().args(["sweep", "--n-min", "70", "--n-max", "70"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 60"));
    let out = unot().args(["sweep", "--out", "/nonexistent-dir/x.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = unot().args(["sweep", "--format", "xml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_real_table() {
    let out = unot().args(["report-real", "--n-max", "30"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,quantum,classical,gap"));
    assert_eq!(lines.next(), Some("1,1.00000000000,0.750000000000,0.250000000000"));
    let gaps: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(gaps.len(), 30);
    assert!(gaps.windows(2).all(|w| w[1] < w[0]) && gaps.iter().all(|&g| g > 0.0));
}
