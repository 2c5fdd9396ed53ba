use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use uavgrid::synth::{synthetic_year, ClimateParams};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").canonicalize().unwrap()
}

fn scenario(dir: &Path, weather: &Path, extra: &str) -> PathBuf {
    let data = data_dir();
    let body = format!(
        "[inputs]\nweather = {:?}\ntraffic = {:?}\nw500_curve = {:?}\nw1000_curve = {:?}\n\n{extra}\n",
        weather,
        data.join("traffic.txt"),
        data.join("w500.csv"),
        data.join("w1000.csv"),
    );
    let path = dir.join("scenario.toml");
    fs::write(&path, body).unwrap();
    path
}

fn fixture(dir: &Path, extra: &str) -> PathBuf {
    scenario(dir, &data_dir().join("weather.csv"), extra)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavgrid")).args(args).output().unwrap()
}

fn run_in(cmd: &str, scenario: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--scenario", scenario.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

const SEARCH: &str = "[search]\nd_lb = 50\nd_ub = 300\nstep = 50\n";

#[test]
fn size_report_is_self_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let out = dir.path().join("out");
    let o = run_in("size", &sc, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "feasible");
    let best = &report["best"];
    let d = best["config"]["d_max"].as_f64().unwrap();
    let f = best["config"]["cost"]["total"].as_f64().unwrap();
    assert!((best["objective"].as_f64().unwrap() - PI * d * d / f).abs() < 1e-9);
    assert_eq!(report["ranked"][0], *best);
    assert_eq!(report["scenario"]["search"]["d_ub"].as_f64(), Some(300.0));
    let battery = fs::read_to_string(out.join("battery.csv")).unwrap();
    assert_eq!(battery.lines().count(), 8761);
    let swarm = fs::read_to_string(out.join("swarm.csv")).unwrap();
    assert_eq!(swarm.lines().count(), 8761);
}

#[test]
fn zero_budget_is_budget_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let o = run_in("size", &sc, &dir.path().join("out"), &["--budget", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn radius_beyond_reach_is_coverage_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let o = run_in("size", &sc, &dir.path().join("out"), &["--dlb", "20000", "--dub", "20000"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pinned_radius_gives_one_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let out = dir.path().join("out");
    let o = run_in("size", &sc, &out, &["--dlb", "150", "--dub", "150"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["candidates"], serde_json::json!([150.0]));
    assert_eq!(report["ranked"].as_array().unwrap().len(), 1);
}

#[test]
fn flags_override_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), "[prices]\nbudget_eur = 0\n");
    let out = dir.path().join("out");
    let o = run_in("size", &sc, &out, &["--budget", "100000", "--dlb", "100", "--dub", "100"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_inputs_exit_with_input_code() {
    let dir = tempfile::tempdir().unwrap();
    let sc = scenario(dir.path(), &dir.path().join("missing.csv"), SEARCH);
    assert_eq!(run_in("size", &sc, &dir.path().join("out"), &[]).status.code(), Some(4));
    let sc = fixture(dir.path(), "[search]\nstep = -1\n");
    assert_eq!(run_in("size", &sc, &dir.path().join("out"), &[]).status.code(), Some(4));
    let sc = fixture(dir.path(), "[nonsense]\nx = 1\n");
    assert_eq!(run_in("sweep", &sc, &dir.path().join("out"), &[]).status.code(), Some(4));
}

fn sweep_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

// Higher antenna efficiency raises the optimal elevation, so at equal radius
// the swarm flies higher and EEAC does not improve in general.
#[test]
fn one_file_per_antenna_with_recomputable_eeac() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let out = dir.path().join("out");
    for a in ["0.6", "0.9"] {
        assert_eq!(run_in("sweep", &sc, &out, &["--aeff", a, "--budget", "0"]).status.code(), Some(3));
    }
    let lo = sweep_rows(&out.join("sweep-suburban-aeff0.6.csv"));
    let hi = sweep_rows(&out.join("sweep-suburban-aeff0.9.csv"));
    assert!(!lo.is_empty());
    for (a, b) in lo.iter().zip(&hi) {
        assert_eq!(a[0], b[0]);
        for row in [a, b] {
            let d: f64 = row[0].parse().unwrap();
            let eeac: f64 = row[1].parse().unwrap();
            let energy: f64 = row[2].parse().unwrap();
            assert!((eeac - PI * d * d / energy).abs() <= 1e-12 * eeac);
            assert_eq!(row[5], "false");
        }
    }
}

#[test]
fn empty_sweep_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let sc = fixture(dir.path(), SEARCH);
    let out = dir.path().join("out");
    let o = run_in("sweep", &sc, &out, &["--dlb", "20000", "--dub", "21000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let text = fs::read_to_string(out.join("sweep-suburban-aeff0.9.csv")).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn validate_accepts_defaults_on_calm_weather() {
    let dir = tempfile::tempdir().unwrap();
    let calm = ClimateParams { wind_scale: 1.5, ..ClimateParams::default() };
    let weather = dir.path().join("calm.csv");
    synthetic_year(3, &calm).write_csv(&weather).unwrap();
    let sc = scenario(dir.path(), &weather, "[search]\nd_lb = 100\n");
    let o = run_in("validate", &sc, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.trim_end().ends_with("ok"), "{text}");
    for echo in ["budget_eur = 100000", "a_eff = 0.9", "uav_eur = 4000", "cell_eur = 5.75", "roughness = 0.335"] {
        assert!(text.contains(echo), "missing `{echo}` in\n{text}");
    }
}

#[test]
fn validate_reports_findings_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let sc = scenario(dir.path(), &dir.path().join("missing.csv"), "[radio]\ntotal_bandwidth_hz = 160e6\n");
    let o = run_in("validate", &sc, dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let findings: Vec<&str> = text.lines().filter(|l| l.starts_with("finding:")).collect();
    assert!(findings.iter().any(|l| l.contains("file not found")), "{text}");
    assert!(findings.iter().any(|l| l.contains("total bandwidth")), "{text}");
    assert!(!text.trim_end().ends_with("ok"));
}
