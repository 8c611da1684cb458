use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn tpqhe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpqhe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(config: &Path, out: &Path, extra: &[&str], cmd: &str) -> Output {
    let mut args = vec![
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    args.push(cmd);
    tpqhe(&args)
}

fn stderr_error(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stderr);
    let line = text.lines().last().expect("error line");
    serde_json::from_str::<Value>(line).expect("stderr is JSON")["error"].clone()
}

fn data_rows(path: &Path) -> usize {
    fs::read_to_string(path).unwrap().lines().count() - 1
}

/// Writes `text` with one line replaced.
fn patched(src: &Path, dir: &Path, from: &str, to: &str) -> PathBuf {
    let text = fs::read_to_string(src).unwrap();
    assert!(text.contains(from), "{from} not in {}", src.display());
    let p = dir.join(src.file_name().unwrap());
    fs::write(&p, text.replace(from, to)).unwrap();
    p
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn outputs_do_not_depend_on_jobs() {
    let tmp = tempfile::tempdir().unwrap();
    for (cfg, cmd) in [("fig4.toml", "engine-sweep"), ("spdc.toml", "spdc"), ("fig8b.toml", "spectro")] {
        let (a, b) = (tmp.path().join(format!("{cmd}1")), tmp.path().join(format!("{cmd}4")));
        assert!(run(&configs().join(cfg), &a, &["--jobs", "1"], cmd).status.success());
        assert!(run(&configs().join(cfg), &b, &["--jobs", "4"], cmd).status.success());
        assert_eq!(dir_bytes(&a), dir_bytes(&b), "{cmd}");
    }
}

#[test]
fn populations_writes_curves_and_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("fig3.toml");
    let o = run(&cfg, tmp.path(), &[], "populations");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(data_rows(&tmp.path().join("populations_coherent.csv")), 400);
    assert_eq!(data_rows(&tmp.path().join("populations_thermal.csv")), 400);
    let s: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("populations_mismatch.json")).unwrap()).unwrap();
    assert!(s["max_mismatch"].as_f64().unwrap() < 1e-10);

    let m: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("manifest.json")).unwrap()).unwrap();
    let hash: String = Sha256::digest(fs::read(&cfg).unwrap())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    assert_eq!(m["config_sha256"], Value::String(hash));
    assert_eq!(m["provenance"], "fig3a");
    assert_eq!(m["tool"], "tpqhe");
    assert_eq!(m["artifacts"].as_array().unwrap().len(), 3);
}

#[test]
fn bath_fit_reports_the_fit() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&configs().join("fig3_bath.toml"), tmp.path(), &[], "bath-fit");
    assert!(o.status.success());
    let s: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("bath_fit.json")).unwrap()).unwrap();
    for key in ["n_h", "gamma_h", "T_h", "max_mismatch"] {
        assert!(s[key].as_f64().unwrap().is_finite(), "{key}");
    }
}

#[test]
fn bounds_gives_five_rows_per_kind() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&configs().join("bounds.toml"), tmp.path(), &[], "bounds");
    assert!(o.status.success());
    for kind in ["classical", "entangled"] {
        let p = tmp.path().join(format!("bounds_{kind}.csv"));
        assert_eq!(data_rows(&p), 5);
        assert!(fs::read_to_string(p).unwrap().lines().skip(1).all(|l| l.ends_with(",ok")));
    }
}

#[test]
fn single_point_sweep_has_one_row() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("fig4.toml");
    let o = tpqhe(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        tmp.path().to_str().unwrap(),
        "engine-sweep",
        "--grid",
        "1x1",
        "--kind",
        "entangled",
    ]);
    assert!(o.status.success());
    assert_eq!(data_rows(&tmp.path().join("engine_sweep_entangled.csv")), 1);
    assert!(!tmp.path().join("engine_sweep_classical.csv").exists());
}

#[test]
fn json_format_override() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&configs().join("bounds.toml"), tmp.path(), &["--format", "json"], "bounds");
    assert!(o.status.success());
    let t: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("bounds_classical.json")).unwrap()).unwrap();
    assert_eq!(t["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn unknown_unit_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = patched(&configs().join("fig3.toml"), tmp.path(), "unit = \"cm^-1\"", "unit = \"furlong\"");
    let o = run(&cfg, &tmp.path().join("out"), &[], "populations");
    assert_eq!(o.status.code(), Some(2));
    let e = stderr_error(&o);
    assert_eq!(e["kind"], "config");
    assert!(e["message"].as_str().unwrap().contains("furlong"));
}

#[test]
fn negative_rate_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = patched(
        &configs().join("fig3.toml"),
        tmp.path(),
        "gamma_2 = { value = 0.002",
        "gamma_2 = { value = -0.002",
    );
    let o = run(&cfg, &tmp.path().join("out"), &[], "populations");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_error(&o)["message"].as_str().unwrap().contains("gamma_2"));
}

#[test]
fn unreachable_bounds_are_a_numeric_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = patched(
        &configs().join("bounds.toml"),
        tmp.path(),
        "lambda_prime = 10.0",
        "lambda_prime = 0.001",
    );
    let o = run(&cfg, &tmp.path().join("out"), &[], "bounds");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_error(&o)["kind"], "numeric");
}

#[test]
fn corrupted_rate_fails_the_oracle() {
    let tmp = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(configs().join("oracle.toml")).unwrap();
    let text = text.replace("gamma_2 = { value = 0.002", "gamma_2 = { value = -0.002");
    let cfg = tmp.path().join("oracle.toml");
    fs::write(&cfg, format!("{text}\n[options]\nchecks = []\n")).unwrap();
    let out = tmp.path().join("out");
    let o = run(&cfg, &out, &[], "oracle-check");
    assert_eq!(o.status.code(), Some(4));
    let e = stderr_error(&o);
    assert_eq!(e["kind"], "oracle");
    assert!(e["message"].as_str().unwrap().contains("params-valid"));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL params-valid"));
    assert!(out.join("oracle_report.csv").exists());
}

#[test]
fn parameter_checks_pass_on_the_reference_set() {
    let tmp = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(configs().join("oracle.toml")).unwrap();
    let cfg = tmp.path().join("oracle.toml");
    fs::write(&cfg, format!("{text}\n[options]\nchecks = [\"bath-asymptote\", \"intensity-scaling\"]\n")).unwrap();
    let o = run(&cfg, &tmp.path().join("out"), &[], "oracle-check");
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("PASS ode-vs-closed-form"));
    assert!(stdout.contains("INFO verbatim-vs-consistent"));
}

#[test]
fn scenario_mismatch_and_usage_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&configs().join("fig3.toml"), tmp.path(), &[], "bounds");
    assert_eq!(o.status.code(), Some(2));
    let o = tpqhe(&["--jobs", "0", "bounds"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tpqhe(&["--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_error(&o)["kind"], "config");
}
