use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use exitrate_cli::report::Report;
use tempfile::TempDir;

const BROWNIAN: &str = r#"{
  "horizon": 1.0,
  "kernels": [{ "family": "fbm", "alpha": 1.0 }],
  "exit": { "halfspace": { "xi": [1.0], "x": 1.0 } },
  "model": { "shared": { "weibull": { "d": 1.0, "theta": 2.0 } } },
  "simulation": { "grid_points": 64, "gammas": [1, 2], "samples": 4000, "seed": 11 }
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exitrate"))
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn decay_brownian_rate() {
    let dir = TempDir::new().unwrap();
    let o = run(&["decay"], &scenario(&dir, "s.json", BROWNIAN));
    assert!(o.status.success(), "{}", stderr(&o));
    let Report::Decay(r) = Report::from_json(&stdout(&o)).unwrap() else {
        panic!("expected a decay report")
    };
    assert!((r.w - std::f64::consts::SQRT_2).abs() < 1e-8);
    assert_eq!(r.t_star, vec![1.0]);
    assert_eq!(r.model, "equal");
}

#[test]
fn ggbm_scale_reports_resolved_law() {
    let dir = TempDir::new().unwrap();
    let text = BROWNIAN.replace(r#"{ "weibull": { "d": 1.0, "theta": 2.0 } }"#, r#"{ "ggbm": { "beta": 0.5, "rho": 0.5 } }"#);
    let o = run(&["decay"], &scenario(&dir, "s.json", &text));
    assert!(o.status.success(), "{}", stderr(&o));
    let Report::Decay(r) = Report::from_json(&stdout(&o)).unwrap() else {
        panic!("expected a decay report")
    };
    assert_eq!((r.laws[0].d, r.laws[0].theta), (0.25, 4.0));
}

#[test]
fn quadrant_indep_with_theta_two_is_rejected() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
      "horizon": 1.0,
      "kernels": [{ "family": "fbm", "alpha": 1.0 }, { "family": "fbm", "alpha": 1.0 }],
      "exit": { "quadrant": { "levels": [1.0, 1.0] } },
      "model": { "hadamard": [{ "weibull": { "d": 1.0, "theta": 2.0 } }, { "weibull": { "d": 1.0, "theta": 3.0 } }] }
    }"#;
    let o = run(&["decay"], &scenario(&dir, "s.json", text));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("precondition"), "{}", stderr(&o));
}

#[test]
fn validation_errors_name_the_field() {
    let dir = TempDir::new().unwrap();
    let text = BROWNIAN.replace(r#""alpha": 1.0"#, r#""alpha": 2.5"#);
    let o = run(&["decay"], &scenario(&dir, "s.json", &text));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("kernels[0].alpha"), "{}", stderr(&o));

    let o = run(&["oracle-check"], &scenario(&dir, "bad.json", "{ \"horizon\": 1.0, \"colour\": 3 }"));
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("malformed scenario"), "{}", stderr(&o));

    let o = run(&["decay"], &dir.path().join("missing.json"));
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn mlp_brownian_path_is_the_identity() {
    let dir = TempDir::new().unwrap();
    let o = run(&["mlp", "--grid-points", "10"], &scenario(&dir, "s.json", BROWNIAN));
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("u,z_1,residual\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 11);
    for r in &rows {
        let u: f64 = r[0].parse().unwrap();
        let z: f64 = r[1].parse().unwrap();
        assert!((z - u).abs() < 1e-8, "z*({u}) = {z}");
    }
    let last = rows.last().unwrap();
    assert!(last[2].parse::<f64>().unwrap().abs() <= 1e-9);
    assert!(rows[..10].iter().all(|r| r[2].is_empty()));
}

#[test]
fn mlp_starts_at_the_shift_and_meets_the_constraint() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
      "horizon": 1.0,
      "kernels": [{ "family": "fbm", "alpha": 0.6 }, { "family": "fbm", "alpha": 1.4 }],
      "shift": { "affine": { "intercept": [0.3, -0.2], "slope": [-0.5, 0.25] } },
      "exit": { "halfspace": { "xi": [1.0, 2.0], "x": 2.0 } },
      "model": { "shared": { "weibull": { "d": 0.5, "theta": 3.0 } } }
    }"#;
    let o = run(&["mlp", "--grid-points", "7"], &scenario(&dir, "s.json", text));
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][1..3], ["0.3".to_string(), "-0.2".to_string()]);
    let filled: Vec<f64> = rows.iter().filter(|r| !r[3].is_empty()).map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(filled.len(), 1);
    assert!(filled[0].abs() <= 1e-9);
}

#[test]
fn oracle_check_passes_and_coarse_grid_is_reported() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
      "horizon": 1.0,
      "kernels": [{ "family": "fbm", "alpha": 0.6 }, { "family": "fbm", "alpha": 1.4 }],
      "shift": { "affine": { "intercept": [0.0, 0.0], "slope": [-0.5, 0.25] } },
      "exit": { "quadrant": { "levels": [1.0, 1.5] } },
      "model": { "hadamard": [{ "weibull": { "d": 1.0, "theta": 3.0 } }, { "weibull": { "d": 0.5, "theta": 4.0 } }] }
    }"#;
    let s = scenario(&dir, "s.json", text);
    let fine = run(&["oracle-check"], &s);
    assert_eq!(fine.status.code(), Some(0), "{}", stderr(&fine));
    let Report::OracleCheck(fine) = Report::from_json(&stdout(&fine)).unwrap() else {
        panic!("expected an oracle report")
    };
    assert!(fine.pass && fine.m == 40);

    let coarse = run(&["oracle-check", "--m", "5", "--tolerance", "1e-6"], &s);
    assert_eq!(coarse.status.code(), Some(6));
    let Report::OracleCheck(coarse) = Report::from_json(&stdout(&coarse)).unwrap() else {
        panic!("expected an oracle report")
    };
    assert!(!coarse.pass);
    assert!(coarse.rel_gap > fine.rel_gap);
    assert_eq!(coarse.closed_form_w, fine.closed_form_w);
}

#[test]
fn out_file_round_trips_to_the_printed_summary() {
    let dir = TempDir::new().unwrap();
    let s = scenario(&dir, "s.json", BROWNIAN);
    for cmd in ["decay", "oracle-check"] {
        let out = dir.path().join(format!("{cmd}.json"));
        let o = bin().arg(cmd).arg(&s).arg("--out").arg(&out).output().unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
        let again = bin().arg("report").arg(&out).output().unwrap();
        assert!(again.status.success());
        assert_eq!(stdout(&again), stdout(&o));
    }
    let o = bin().arg("report").arg(&s).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn simulate_is_byte_identical_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let s = scenario(&dir, "s.json", BROWNIAN);
    let a = run(&["simulate", "--seed", "5"], &s);
    let b = run(&["simulate", "--seed", "5"], &s);
    let c = run(&["simulate", "--seed", "6"], &s);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("gamma,samples,exits,p_hat,ci_low,ci_high,log_rate\n"));
    assert!(stderr(&a).contains("w_ref = 1.41421356"));
}

#[test]
fn simulate_writes_the_curve() {
    let dir = TempDir::new().unwrap();
    let s = scenario(&dir, "s.json", BROWNIAN);
    let curve = dir.path().join("curve.csv");
    let est = dir.path().join("est.csv");
    let o = bin()
        .args(["simulate", "--gammas", "1,2,4", "--samples", "2000"])
        .arg(&s)
        .arg("--out")
        .arg(&est)
        .arg("--curve-out")
        .arg(&curve)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(csv_rows(&std::fs::read_to_string(&est).unwrap()).len(), 3);
    let c = std::fs::read_to_string(&curve).unwrap();
    assert!(c.starts_with("gamma,rate,w_ref,rel_error\n"));
    assert!(csv_rows(&c).len() >= 2);
}

#[test]
fn fixed_scale_matches_reflection_value() {
    let dir = TempDir::new().unwrap();
    let text = BROWNIAN
        .replace(r#"{ "weibull": { "d": 1.0, "theta": 2.0 } }"#, r#"{ "fixed": 1.0 }"#)
        .replace(r#""grid_points": 64"#, r#""grid_points": 1024"#);
    let o = run(&["simulate", "--gammas", "1", "--samples", "20000"], &scenario(&dir, "s.json", &text));
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let p: f64 = rows[0][3].parse().unwrap();
    assert!((p - 0.3173).abs() < 0.02, "p̂ = {p}");
}

#[test]
fn simulate_without_exits_reports_insufficient_data() {
    let dir = TempDir::new().unwrap();
    let text = BROWNIAN.replace(r#""x": 1.0"#, r#""x": 6.0"#);
    let o = run(&["simulate", "--samples", "200"], &scenario(&dir, "s.json", &text));
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));
    assert_eq!(csv_rows(&stdout(&o)).len(), 2);
}

#[test]
fn mlf_values_and_domains() {
    let v = |args: &[&str]| bin().arg("mlf").args(args).output().unwrap();
    let o = v(&["--beta", "1", "--z", "1"]);
    assert_eq!(stdout(&o).trim(), "2.71828183");
    let o = v(&["--beta", "0.5", "--tau", "0"]);
    assert_eq!(stdout(&o).trim(), "0.564189584");
    let o = v(&["--beta", "0.5", "--z", "-2"]);
    assert!(o.status.success());
    assert_eq!(v(&["--beta", "1.5"]).status.code(), Some(3));
    assert_eq!(v(&["--beta", "1", "--tau", "1"]).status.code(), Some(3));
    assert_eq!(v(&["--beta", "0.5"]).status.code(), Some(2));
    assert_eq!(bin().arg("frobnicate").output().unwrap().status.code(), Some(2));
}
