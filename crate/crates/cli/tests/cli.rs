use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use supint_cli::{execute, ExperimentConfig};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> ExperimentConfig {
    ExperimentConfig::load(&configs().join(name)).unwrap()
}

fn json(name: &str) -> Value {
    serde_json::from_str(&execute(&load(name)).unwrap().to_json()).unwrap()
}

fn column(v: &Value, name: &str) -> Vec<Value> {
    let idx = v["columns"].as_array().unwrap().iter().position(|c| c == name).unwrap();
    v["rows"].as_array().unwrap().iter().map(|r| r[idx].clone()).collect()
}

fn numbers(v: &Value, name: &str) -> Vec<f64> {
    column(v, name).iter().map(|x| x.as_f64().unwrap()).collect()
}

fn supint(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_supint")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn constant_curvature_grid_is_flat_at_six_z() {
    let v = json("curvature-constant.toml");
    assert_eq!(v["summary"]["passed"], true);
    let k = numbers(&v, "K");
    assert_eq!(k.len(), 200);
    assert!(k.iter().all(|k| (k - 6.0 * 0.8).abs() <= 1e-8));
}

#[test]
fn identity_grid_follows_the_explicit_scalar() {
    let v = json("curvature-identity.toml");
    for (r, k) in numbers(&v, "r").iter().zip(numbers(&v, "K")) {
        let want = -2.5 * r.sin() * r.tan();
        assert!((k - want).abs() <= 1e-8 * want.abs().max(1e-3), "r={r}: {k} vs {want}");
    }
}

#[test]
fn cartesian_grid_reports_identity_residuals() {
    let v = json("curvature-cartesian.toml");
    assert_eq!(v["rows"].as_array().unwrap().len(), 50);
    assert_eq!(v["summary"]["passed"], true);
}

#[test]
fn flat_geodesic_is_a_straight_line() {
    let v = json("geodesic-flat.toml");
    assert_eq!(v["summary"]["passed"], true);
    let (q0, p0) = ([0.3, 0.2, 0.4], [0.1, -0.05, 0.02]);
    let t = numbers(&v, "t");
    for (i, name) in ["q1", "q2", "q3"].iter().enumerate() {
        for (t, q) in t.iter().zip(numbers(&v, name)) {
            assert!((q - (q0[i] + 0.5 * p0[i] * t)).abs() < 1e-9);
        }
    }
}

#[test]
fn bound_kepler_orbit_conserves_its_integrals() {
    let v = json("geodesic-kepler.toml");
    let props = v["summary"]["properties"].as_array().unwrap();
    assert_eq!(props.len(), 4);
    for p in props {
        assert!(p["statistic"].as_f64().unwrap() <= 1e-8, "{p}");
    }
    assert_eq!(v["summary"]["metrics"]["truncated"], false);
}

#[test]
fn escaping_orbit_is_truncated() {
    let v = json("geodesic-escape.toml");
    let m = &v["summary"]["metrics"];
    assert_eq!(m["truncated"], true);
    assert!(m["t_reached"].as_f64().unwrap() < m["t_end"].as_f64().unwrap());
    assert!(m["termination"].as_str().unwrap().contains("patch boundary"));
}

#[test]
fn audits_pass_for_built_in_profiles() {
    for profile in [
        "{ kind = \"identity\" }",
        "{ kind = \"constant-curvature\" }",
        "{ kind = \"exponential\", sign = \"minus\" }",
        "{ kind = \"power-cosine\", k = -0.4 }",
        "{ kind = \"cos-cubed\" }",
    ] {
        let text =
            format!("seed = 3\n[space]\nz = 0.7\nb = [0.05, 0.1, 0.2]\nprofile = {profile}\n[run]\nkind = \"audit\"\n");
        let record = execute(&ExperimentConfig::from_toml(&text).unwrap()).unwrap();
        assert!(
            record.summary.passed,
            "{profile}: {:?}",
            record.summary.properties.iter().filter(|p| !p.passed).collect::<Vec<_>>()
        );
    }
}

#[test]
fn staeckel_check_flags_the_identity_profile() {
    let v = json("audit-staeckel.toml");
    assert_eq!(v["summary"]["passed"], false);
    assert_eq!(v["summary"]["metrics"]["staeckel"], "ℐ flagged non-conserved");
}

#[test]
fn potential_scan_columns_and_agreement() {
    let v = json("potential-coscubed.toml");
    let cols: Vec<&str> = v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(
        cols,
        ["r", "u_quadrature", "u_closed_form", "kepler_coulomb", "oscillator", "ode_residual", "path_delta", "status"]
    );
    assert!(numbers(&v, "path_delta").iter().all(|d| *d <= 1e-8));
}

#[test]
fn constant_curvature_scan_is_minus_cotangent() {
    let text = "[space]\nz = 0.64\nprofile = { kind = \"constant-curvature\" }\n[run]\nkind = \"potential-scan\"\nr = { start = 0.1, stop = 1.8, count = 20 }\n";
    let record = execute(&ExperimentConfig::from_toml(text).unwrap()).unwrap();
    let v: Value = serde_json::from_str(&record.to_json()).unwrap();
    for (r, u) in numbers(&v, "r").iter().zip(numbers(&v, "u_closed_form")) {
        assert!((u + 0.8 / (0.8 * r).tan()).abs() < 1e-13);
    }
}

#[test]
fn oscillator_zero_is_a_flagged_row_between_finite_neighbours() {
    let v = json("potential-oscillator-zero.toml");
    let status = column(&v, "status");
    let osc = column(&v, "oscillator");
    let i = status.iter().position(|s| s == "singular").unwrap();
    assert_eq!(status.iter().filter(|s| *s == "singular").count(), 1);
    assert!(osc[i].is_null());
    assert!(osc[i - 1].as_f64().unwrap().is_finite() && osc[i + 1].as_f64().unwrap().is_finite());
    let r = v["rows"][i][0].as_f64().unwrap();
    assert!((r * r.tanh() - 1.0).abs() < 1e-12);
}

#[test]
fn csv_output_has_a_summary_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let cfg = configs().join("curvature-constant.toml");
    let (code, _) = supint(&["curvature", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("r,theta,K12,K13,K23,K,identity_residual,K_closed_form,status\n"));
    assert_eq!(csv.lines().count(), 201);
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("grid.csv.summary.json")).unwrap()).unwrap();
    assert_eq!(side["schema_version"], 1);
    assert!(side.get("rows").is_none());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let o = out.to_str().unwrap();
    let empty = dir.path().join("empty.toml");
    std::fs::write(
        &empty,
        "[space]\nz = 1.0\nprofile = { kind = \"identity\" }\n[run]\nkind = \"curvature-grid\"\nr = { start = 0.1, stop = 1.0, count = 0 }\ntheta = { start = 0.1, stop = 1.0, count = 2 }\n",
    )
    .unwrap();
    assert_eq!(supint(&["curvature", "--config", empty.to_str().unwrap(), "--out", o]).0, 2);
    assert_eq!(supint(&["curvature", "--config", "/nonexistent.toml", "--out", o]).0, 2);
    let outside = dir.path().join("outside.toml");
    std::fs::write(
        &outside,
        "[space]\nz = 1.0\nprofile = { kind = \"identity\" }\n[run]\nkind = \"potential-scan\"\nr = { start = 0.1, stop = 2.0, count = 4 }\n",
    )
    .unwrap();
    assert_eq!(supint(&["potential", "--config", outside.to_str().unwrap(), "--out", o]).0, 2);
    let cfg = configs().join("geodesic-kepler.toml");
    assert_eq!(supint(&["geodesic", "--config", cfg.to_str().unwrap(), "--tol", "1e-2", "--out", o]).0, 2);
}

#[test]
fn seed_and_tol_flags_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let cfg = configs().join("geodesic-kepler.toml");
    let (code, _) = supint(&[
        "geodesic",
        "--config",
        cfg.to_str().unwrap(),
        "--tol",
        "1e-11",
        "--seed",
        "5",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["config_echo"]["run"]["tol"], 1e-11);
    assert_eq!(v["config_echo"]["seed"], 5);
}
