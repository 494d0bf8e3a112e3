use std::path::Path;

use clap::Parser;
use hexpack::cli::{run, Cli, Command, EXIT_INVALID, EXIT_VIOLATION};
use serde_json::Value;

const SQRT3: f64 = 1.732_050_807_568_877_2;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hexpack(args: &[&str]) -> Outcome {
    let argv = std::iter::once("hexpack").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(o: &Outcome) -> Value {
    assert_eq!(o.code, 0, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn write_regular_layout(path: &Path) {
    let o = hexpack(&["layout", "--alpha", "1.0471975511965976", "--beta", "1.0471975511965976", "--gamma", "1.0471975511965976", "--window", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    std::fs::write(path, o.stdout).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hexpack(&[]).code, EXIT_INVALID);
    assert_eq!(hexpack(&["bloom"]).code, EXIT_INVALID);
    assert_eq!(hexpack(&["field", "--alpha", "1"]).code, EXIT_INVALID);
    assert_eq!(hexpack(&["--help"]).code, 0);
}

#[test]
fn invalid_values_exit_two_with_a_message() {
    let o = hexpack(&["flower", "--points", "0,1,2,3,5,inf"]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.contains("not a flower configuration"), "{}", o.stderr);

    let o = hexpack(&["field", "--alpha", "4", "--beta", "1", "--gamma", "1"]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.stderr.starts_with("error:"));

    assert_eq!(hexpack(&["field", "--alpha", "1", "--beta", "1", "--gamma", "1", "--window", "0"]).code, EXIT_INVALID);
    assert_eq!(hexpack(&["flower", "--points", "0,1,2"]).code, EXIT_INVALID);
    assert_eq!(hexpack(&["verify", "/nonexistent/layout.json"]).code, EXIT_INVALID);
}

#[test]
fn regular_angles_give_the_constant_field() {
    let third = std::f64::consts::FRAC_PI_3.to_string();
    let doc = json(&hexpack(&["field", "--alpha", &third, "--beta", &third, "--gamma", &third, "--window", "3"]));
    let edges = doc["field"]["edges"].as_array().unwrap();
    assert!(!edges.is_empty());
    for e in edges {
        assert!(e["s_re"].as_f64().unwrap().abs() < 1e-12);
        assert!((e["s_im"].as_f64().unwrap() - SQRT3).abs() < 1e-12);
    }
    assert!(doc["max_hexagon_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(doc["immersed"], Value::Bool(true));
}

#[test]
fn doyle_with_unit_ratios_has_unit_radii() {
    let doc = json(&hexpack(&["doyle", "-A", "1", "-B", "1", "--window", "3"]));
    let circles = doc["circles"].as_array().unwrap();
    assert_eq!(circles.len(), 49);
    for c in circles {
        assert!((c["r"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn verify_accepts_a_generated_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("regular.json");
    write_regular_layout(&path);
    let o = hexpack(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let report: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["ok"], Value::Bool(true));
    assert!(report["flowers_checked"].as_u64().unwrap() > 0);
}

#[test]
fn verify_reports_a_hand_edited_radius() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edited.json");
    write_regular_layout(&path);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let circle = doc["circles"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|c| c["n"] == 0 && c["m"] == 0)
        .unwrap();
    let r = circle["r"].as_f64().unwrap();
    circle["r"] = Value::from(r * 1.05);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

    let o = hexpack(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VIOLATION, "{}", o.stderr);
    assert!(o.stderr.contains("multi_ratio"), "{}", o.stderr);
    let report: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["ok"], Value::Bool(false));
    let kinds: Vec<&str> = report["failures"].as_array().unwrap().iter().map(|f| f["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"geometric_multi_ratio"), "{kinds:?}");
}

#[test]
fn layout_reads_a_field_file() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("field.json");
    let o = hexpack(&["field", "--alpha", "1.0", "--beta", "1.05", "--gamma", "1.1", "--window", "2"]);
    let report: Value = json(&o);
    std::fs::write(&field, serde_json::to_string(&report["field"]).unwrap()).unwrap();

    let from_file = json(&hexpack(&["layout", "--field", field.to_str().unwrap()]));
    let direct = json(&hexpack(&["layout", "--alpha", "1.0", "--beta", "1.05", "--gamma", "1.1", "--window", "2"]));
    assert_eq!(from_file["circles"], direct["circles"]);
}

#[test]
fn outputs_go_to_files_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let (out, svg) = (dir.path().join("a.json"), dir.path().join("a.svg"));
    let o = hexpack(&["airy", "--grid-spacing", "0.5", "--extent", "1", "--out", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(doc["schwarzian"].is_object(), "{doc}");
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn symmetric_flower_reports_a_common_point() {
    let doc = json(&hexpack(&["symmetric-flower", "--points", "0,1,2,3.5,5,inf"]));
    assert_eq!(doc["symmetry"]["symmetric"], Value::Bool(true));
    assert!(doc["symmetry"]["common_point"].is_object());
    assert!(doc["multi_ratio_defect"].as_f64().unwrap() < 1e-12);
}

#[test]
fn port_comes_from_flag_then_environment_then_default() {
    let port = |args: &[&str]| match Cli::try_parse_from(args).unwrap().command {
        Command::Serve { port, .. } => port,
        other => panic!("{other:?}"),
    };
    std::env::remove_var("HEXPACK_PORT");
    assert_eq!(port(&["hexpack", "serve"]), 8642);
    std::env::set_var("HEXPACK_PORT", "9001");
    assert_eq!(port(&["hexpack", "serve"]), 9001);
    assert_eq!(port(&["hexpack", "serve", "--port", "7000"]), 7000);
    std::env::remove_var("HEXPACK_PORT");
}

#[test]
fn the_binary_returns_the_same_codes() {
    let bin = env!("CARGO_BIN_EXE_hexpack");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["doyle", "-A", "1", "-B", "1", "--window", "1"]), Some(0));
    assert_eq!(status(&["doyle", "-A", "-1", "-B", "1"]), Some(EXIT_INVALID));
    assert_eq!(status(&["nonsense"]), Some(EXIT_INVALID));
}
