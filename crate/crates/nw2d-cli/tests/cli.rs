use std::path::Path;
use std::process::{Command, Output};

const SMALL: &str = r#"
out = "unused"
seed = 3
p0 = 0.01
diagnostics = "basic"

[grid]
n = 32
length = 32.0

[stepper]
dt = 0.1
t_end = 4.0
checkpoint_every = 10
formulation = "diagonal"
rule = "2/3"

[recipe]
amplitude = AMPLITUDE

[recipe.shape]
kind = "packet"
center = [0.0, 0.0]
width = 4.0

[regularity]
n0 = 6
n1 = 3

[tolerances]
constraint = 1e-12
"#;

fn nw2d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nw2d"))
        .args(args)
        .env_remove("NW2D_THREADS")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, amplitude: f64, edit: impl Fn(String) -> String) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, edit(SMALL.replace("AMPLITUDE", &amplitude.to_string()))).unwrap();
    path.to_str().unwrap().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn printed_defaults_are_a_valid_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = nw2d(&["--print-defaults"]);
    assert_eq!(code(&o), 0);
    let path = dir.path().join("defaults.toml");
    std::fs::write(&path, &o.stdout).unwrap();
    let out = dir.path().join("out");
    let o = nw2d(&["norms", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("wave,zprime3"));
}

#[test]
fn missing_config_is_a_config_error() {
    let o = nw2d(&["run", "--config", "/nonexistent/nw2d.toml"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s.replace("n = 32", "n = 33"));
    assert_eq!(code(&nw2d(&["run", "--config", &cfg])), 2);
    let cfg = write_config(dir.path(), 1e-2, |s| s.replace("p0 = 0.01", "p0 = 0.01\nextra = 1"));
    assert_eq!(code(&nw2d(&["run", "--config", &cfg])), 2);
}

#[test]
fn zero_amplitude_run_has_zero_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 0.0, |s| s);
    let out = dir.path().join("zero");
    let o = nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(out.join("diag.csv")).unwrap();
    let header = rdr.headers().unwrap().clone();
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        rows += 1;
        for (name, v) in header.iter().zip(rec.iter()) {
            let v: f64 = v.parse().unwrap();
            if name != "t" && !v.is_nan() {
                assert_eq!(v, 0.0, "{name}");
            }
        }
    }
    assert_eq!(rows, 5);
    assert_eq!(std::fs::read_dir(out.join("fields")).unwrap().count(), 5);
}

#[test]
fn run_manifest_records_hash_and_constants() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s);
    let out = dir.path().join("r");
    assert_eq!(code(&nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap()])), 0);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["input_hash"].as_str().unwrap().len(), 64);
    let calibration = manifest["calibration"].as_object().unwrap();
    let pi = std::f64::consts::PI;
    assert_eq!(calibration["constraint_curl_curl"].as_f64().unwrap(), 2.0 * pi);
    assert_eq!(calibration["energy_mixed"].as_f64().unwrap(), -2.0 * pi);
    let waves: Vec<f64> = calibration
        .iter()
        .filter(|(k, _)| k.starts_with("constraint_waves["))
        .map(|(_, v)| v.as_f64().unwrap())
        .collect();
    assert!(!waves.is_empty() && waves.iter().all(|&v| v == 8.0 * pi * pi));
    assert_eq!(manifest["config"]["grid"]["n"].as_u64().unwrap(), 32);
    let eps1 = manifest["smallness"]["epsilon1"].as_f64().unwrap();
    assert!((eps1 - 1e-2f64.powf(5.0 / 6.0)).abs() < 1e-15);
}

#[test]
fn identical_runs_give_identical_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 2e-2, |s| s);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        assert_eq!(code(&nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--threads", "1"])), 0);
    }
    let ta = std::fs::read(a.join("diag.csv")).unwrap();
    assert_eq!(ta, std::fs::read(b.join("diag.csv")).unwrap());
    // Every number carries 17 significant digits.
    let text = String::from_utf8(ta).unwrap();
    let field = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(field.split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
}

#[test]
fn horizon_needs_the_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s.replace("t_end = 4.0", "t_end = 16.0"));
    let out = dir.path().join("h");
    assert_eq!(code(&nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap()])), 2);
    let o = nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--override-horizon"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn derivation_check_catches_a_sign_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s);
    let out = dir.path().join("d");
    let o = nw2d(&["verify-derivation", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = nw2d(&["verify-derivation", "--perturb", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let mut rdr = csv::Reader::from_path(out.join("derivation.csv")).unwrap();
    let worst = rdr
        .records()
        .map(|r| r.unwrap()[3].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn symbol_verification_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    let o = nw2d(&["verify-symbols", "--samples", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(out.join("symbols.csv").exists());
}

#[test]
fn decay_refuses_windows_past_the_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s);
    let out = dir.path().join("w");
    let o = nw2d(&["decay", "--config", &cfg, "--t-max", "20", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("horizon"));
    let o = nw2d(&["decay", "--config", &cfg, "--t-min", "1", "--t-max", "12", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("slope"));
    let o = nw2d(&[
        "decay", "--config", &cfg, "--t-min", "1", "--t-max", "12", "--expect-slope", "5", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn scatter_and_norms_read_run_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 1e-2, |s| s.replace("t_end = 4.0", "t_end = 12.0").replace("n = 32", "n = 64").replace("length = 32.0", "length = 64.0"));
    let out = dir.path().join("run");
    let o = nw2d(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = nw2d(&["scatter", "--config", &cfg, "--from", out.to_str().unwrap(), "--every", "2", "--t-min", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let seq: Vec<f64> = csv::Reader::from_path(out.join("scatter.csv"))
        .unwrap()
        .records()
        .map(|r| r.unwrap()[1].parse().unwrap())
        .collect();
    assert_eq!(seq.len(), 6);
    assert_eq!(*seq.last().unwrap(), 0.0);
    assert!(seq[0] > 0.0);

    let state = std::fs::read_dir(out.join("fields")).unwrap().next().unwrap().unwrap().path();
    let o = nw2d(&["norms", "--config", &cfg, "--state", state.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 15);
}

#[test]
fn thread_count_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nw2d"))
        .args(["norms"])
        .env("NW2D_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
