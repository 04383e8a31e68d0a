use std::path::Path;

use assert_cmd::Command;
use serde_json::Value;
use tempfile::TempDir;

fn brio() -> Command {
    let mut cmd = Command::cargo_bin("brio").unwrap();
    cmd.env_remove("BRIO_OUT_DIR");
    cmd
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema: &str, instance: &Value) {
    let schema = read_json(&Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema));
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn stderr_json(out: &std::process::Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().unwrap();
    let v: Value = serde_json::from_str(line).unwrap();
    assert_valid("error.schema.json", &v);
    v
}

fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn equal_states_give_no_waves_and_no_singularities() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["solve", "--left", "0.5,1", "--right", "0.5,1", "--out-dir"])
        .arg(dir.path())
        .assert()
        .success();
    let sol = read_json(&dir.path().join("solution.json"));
    assert_valid("solution.schema.json", &sol);
    assert_eq!(sol["singular"].as_array().unwrap().len(), 0);
    assert_eq!(sol["fan"]["waves"].as_array().unwrap().len(), 0);
    assert_eq!(sol["regular"].as_array().unwrap().len(), 1);
}

#[test]
fn two_shock_data_carry_two_singularities() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["solve", "--left", "1,3", "--right=-1,3", "--out-dir"])
        .arg(dir.path())
        .assert()
        .success();
    let sol = read_json(&dir.path().join("solution.json"));
    assert_valid("solution.schema.json", &sol);
    assert_eq!(sol["fan"]["region"], "IV");
    let singular = sol["singular"].as_array().unwrap();
    assert_eq!(singular.len(), 2);
    assert!(singular.iter().all(|s| s["component"] == "v"));
}

#[test]
fn sign_change_records_the_flip() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["solve", "--left=-0.3,2", "--right", "1.2,-1", "--out-dir"])
        .arg(dir.path())
        .assert()
        .success();
    let sol = read_json(&dir.path().join("solution.json"));
    assert_valid("solution.schema.json", &sol);
    assert!(sol["flip"].is_number());
    assert_eq!(sol["options"]["flip_speed"], "rh");
}

#[test]
fn curves_put_sw1_above_sw2() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["curves", "--base", "1,5", "--family", "all", "--out-dir"])
        .arg(dir.path())
        .assert()
        .success();
    for name in ["sw1", "sw2", "rw1", "rw2"] {
        assert!(dir.path().join(format!("{name}.csv")).exists(), "{name}");
    }
    assert!(!dir.path().join("sw2_inv.csv").exists());
    let sw1 = csv_rows(&dir.path().join("sw1.csv"));
    let sw2 = csv_rows(&dir.path().join("sw2.csv"));
    assert_eq!(sw1.len(), 201);
    assert_eq!(
        sw1[0],
        sw2[0][..2].iter().copied().chain([sw1[0][2]]).collect::<Vec<_>>()
    );
    for (a, b) in sw1.iter().zip(&sw2).skip(1) {
        assert_eq!(a[0], b[0]);
        assert!(a[1] > b[1], "{a:?} vs {b:?}");
    }
    // closed form at u = 0: 5.5 + sqrt(9 + 1/4 + 1/2 + 1/3)
    let at_zero = sw1.iter().find(|r| r[0] == 0.0).unwrap();
    assert!((at_zero[1] - 8.675_426_480_542_942).abs() < 1e-14);
}

#[test]
fn curves_with_inverse_and_json_format() {
    let dir = TempDir::new().unwrap();
    brio()
        .args([
            "curves",
            "--base",
            "1,5",
            "--inverse",
            "--format",
            "json",
            "--points",
            "21",
            "--out-dir",
        ])
        .arg(dir.path())
        .assert()
        .success();
    let v = read_json(&dir.path().join("curves.json"));
    assert_valid("curves.schema.json", &v);
    let names: Vec<&String> = v["curves"].as_object().unwrap().keys().collect();
    assert_eq!(names.len(), 6);
    assert_eq!(v["curves"]["sw2_inv"].as_array().unwrap().len(), 21);
}

#[test]
fn sample_writes_rows_and_sidecar() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["sample", "--left", "1,3", "--right=-1,3", "--t", "2", "--points", "101"])
        .args(["--x-min=-10", "--x-max", "10", "--out-dir"])
        .arg(dir.path())
        .assert()
        .success();
    let rows = csv_rows(&dir.path().join("sample.csv"));
    assert_eq!(rows.len(), 101);
    // carriers sit at x ≈ −7.02 and x ≈ 5.31 at t = 2
    assert_eq!(rows[0][0], -10.0);
    assert_eq!(rows[100][0], 10.0);
    assert_eq!(&rows[0][1..], &[1.0, 3.0]);
    assert_eq!(&rows[100][1..], &[-1.0, 3.0]);
    let side = read_json(&dir.path().join("singularities.json"));
    assert_valid("singularities.schema.json", &side);
    let sing = side["singularities"].as_array().unwrap();
    assert_eq!(sing.len(), 2);
    for s in sing {
        let (speed, pos) = (s["speed"].as_f64().unwrap(), s["position"].as_f64().unwrap());
        assert_eq!(pos, 2.0 * speed);
    }

    let json_dir = TempDir::new().unwrap();
    brio()
        .args([
            "sample",
            "--left",
            "1,3",
            "--right=-1,3",
            "--t",
            "2",
            "--points",
            "101",
            "--format",
            "json",
        ])
        .args(["--x-min=-10", "--x-max", "10"])
        .arg("--out-dir")
        .arg(json_dir.path())
        .assert()
        .success();
    let v = read_json(&json_dir.path().join("sample.json"));
    assert_valid("sample.schema.json", &v);
    let u: Vec<f64> = v["u"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(u, rows.iter().map(|r| r[1]).collect::<Vec<_>>());
}

#[test]
fn identical_runs_give_identical_files() {
    let runs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
    for dir in &runs {
        brio()
            .args(["sample", "--left=-0.3,2", "--right", "1.2,-1", "--out-dir"])
            .arg(dir.path())
            .assert()
            .success();
        brio()
            .args(["solve", "--left=-0.3,2", "--right", "1.2,-1", "--out-dir"])
            .arg(dir.path())
            .assert()
            .success();
        brio()
            .args(["curves", "--base", "1,5", "--inverse", "--out-dir"])
            .arg(dir.path())
            .assert()
            .success();
    }
    let mut names: Vec<_> = std::fs::read_dir(runs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for name in names {
        let a = std::fs::read(runs[0].path().join(&name)).unwrap();
        let b = std::fs::read(runs[1].path().join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
}

#[test]
fn verify_seed_42_passes() {
    let dir = TempDir::new().unwrap();
    brio()
        .args(["verify", "--seed", "42", "--out-dir"])
        .arg(dir.path())
        .assert()
        .code(0);
    let report = read_json(&dir.path().join("report.json"));
    assert_valid("report.schema.json", &report);
    assert_eq!(report["seed"], 42);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_failure_exits_with_2() {
    let dir = TempDir::new().unwrap();
    let out = brio()
        .args(["verify", "--seed", "3", "--tol-weak", "1e-30", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report = read_json(&dir.path().join("report.json"));
    assert_valid("report.schema.json", &report);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["passed"] == false));
}

#[test]
fn domain_errors_exit_with_1_and_json() {
    let dir = TempDir::new().unwrap();
    let out = brio()
        .args(["curves", "--base", "1,0.1", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "domain");
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());

    let out = brio().args(["solve", "--left", "1,2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = brio()
        .args(["solve", "--left", "1", "--right", "1,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = brio()
        .args(["solve", "--left", "1,2", "--right", "0,1", "--tol-ode", "-1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = brio()
        .args(["fv-compare", "--left", "1,2", "--right", "0,1", "--cells", "8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "precondition");
}

#[test]
fn job_file_wins_with_a_warning() {
    let dir = TempDir::new().unwrap();
    let job = serde_json::json!({
        "subcommand": "solve",
        "left": [1.0, 3.0],
        "right": [-1.0, 3.0],
        "flip_speed": "rh"
    });
    assert_valid("job.schema.json", &job);
    let path = dir.path().join("job.json");
    std::fs::write(&path, job.to_string()).unwrap();
    let out = brio()
        .args(["solve", "--left", "0,1", "--config"])
        .arg(&path)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning") && stderr.contains("left"), "{stderr}");
    let sol = read_json(&dir.path().join("solution.json"));
    assert_eq!(sol["initial"]["left"]["u"], 1.0);

    std::fs::write(&path, r#"{"left": [1, 3], "right": [0, 1], "tolerance": 1}"#).unwrap();
    let out = brio().args(["solve", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "config");
}

#[test]
fn output_directory_from_environment() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("nested");
    brio()
        .env("BRIO_OUT_DIR", &target)
        .args(["solve", "--left", "1,2", "--right", "0,1"])
        .assert()
        .success();
    assert!(target.join("solution.json").exists());
}

#[test]
fn fv_compare_errors_shrink_under_refinement() {
    let dir = TempDir::new().unwrap();
    brio()
        .args([
            "fv-compare",
            "--left",
            "1,3",
            "--right=-1,3",
            "--cells",
            "256,512,1024",
            "--format",
            "json",
        ])
        .arg("--out-dir")
        .arg(dir.path())
        .assert()
        .success();
    let v = read_json(&dir.path().join("fv_refinement.json"));
    assert_valid("fv_refinement.schema.json", &v);
    let errs: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["l1_error"].as_f64().unwrap())
        .collect();
    assert_eq!(errs.len(), 3);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn csv_requests_for_json_only_commands_are_rejected() {
    let out = brio()
        .args(["solve", "--left", "1,2", "--right", "0,1", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "usage");
}
