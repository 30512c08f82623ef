use std::process::{Command, Output};

use mcgcert::cert_file::CertFile;
use mcgcert::chart_file::{chart_to_string, load_chart};
use mcgcert_core::chart::{default_chart, InvolutionName, Sign};
use mcgcert_core::params::SurfaceParams;

fn mcgcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcgcert")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = mcgcert(&["verify", "--g", "13", "--n", "5", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: pass"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    for key in ["params", "checks", "census", "pi", "overall", "timestamp"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(report["pi"]["images"]["sigma"], "(1 5)(2 4)");
    assert_eq!(report["census"]["size"], 8);
}

#[test]
fn unsupported_parameters_are_an_error_not_a_failure() {
    let out = mcgcert(&["verify", "--g", "14", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unsupported parameters"), "{}", stderr(&out));
    assert_eq!(mcgcert(&["verify", "--g", "13", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn corrupted_chart_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.json");
    let mut chart = default_chart(&SurfaceParams::new(16, 4).unwrap()).unwrap();
    let entry = &mut chart.involutions.get_mut(&InvolutionName::I).unwrap().table[0];
    entry.eps = if entry.eps == Sign::Minus { Sign::Plus } else { Sign::Minus };
    std::fs::write(&path, chart_to_string(&chart)).unwrap();
    let out = mcgcert(&["verify", "--g", "16", "--n", "4", "--chart", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL chart/table/I/"), "{}", stdout(&out));
}

#[test]
fn chart_dump_round_trips_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.json");
    let p = path.to_str().unwrap();
    assert!(mcgcert(&["chart", "--g", "13", "--n", "7", "--dump", p]).status.success());
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(load_chart(&path).unwrap(), default_chart(&SurfaceParams::new(13, 7).unwrap()).unwrap());
    assert!(mcgcert(&["chart", "--g", "13", "--n", "7", "--dump", p]).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    assert!(mcgcert(&["verify", "--g", "13", "--n", "7", "--chart", p]).status.success());
    // A chart for different parameters is rejected up front.
    assert_eq!(mcgcert(&["verify", "--g", "13", "--n", "5", "--chart", p]).status.code(), Some(2));
}

#[test]
fn malformed_chart_files_report_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.json");
    let p = path.to_str().unwrap();
    let chart = default_chart(&SurfaceParams::new(13, 5).unwrap()).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&chart_to_string(&chart)).unwrap();
    json["curves"].as_object_mut().unwrap().remove("b1");
    std::fs::write(&path, json.to_string()).unwrap();
    let out = mcgcert(&["verify", "--g", "13", "--n", "5", "--chart", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("incomplete curve set: missing b1"), "{}", stderr(&out));

    let mut json: serde_json::Value = serde_json::from_str(&chart_to_string(&chart)).unwrap();
    json["involutions"]["sigma"]["matrix"][3] = "0101".into();
    std::fs::write(&path, json.to_string()).unwrap();
    let out = mcgcert(&["verify", "--g", "13", "--n", "5", "--chart", p]);
    assert!(stderr(&out).contains("dimension mismatch in involution sigma row 4"), "{}", stderr(&out));
}

#[test]
fn certificates_round_trip_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.json");
    let p = path.to_str().unwrap();
    assert!(mcgcert(&["certify", "--g", "16", "--n", "4", "--out", p]).status.success());
    let out = mcgcert(&["check", "--certs", p]);
    assert!(out.status.success(), "{}", stdout(&out));

    let mut file = CertFile::read(&path).unwrap();
    let victim = file.certificates.iter().position(|c| c.target == "t[b2]").unwrap();
    file.certificates[victim].word.remove(0);
    file.write(&path).unwrap();
    let report = dir.path().join("check.json");
    let out = mcgcert(&["check", "--certs", p, "--json", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].starts_with("FAIL t[b2]"), "{text}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["overall"], "fail");
}

#[test]
fn certificate_for_unrequired_target_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("certs.json");
    let p = path.to_str().unwrap();
    assert!(mcgcert(&["certify", "--g", "13", "--n", "5", "--out", p]).status.success());
    let mut file = CertFile::read(&path).unwrap();
    file.certificates[0].target = "t[b3]".into();
    file.write(&path).unwrap();
    let out = mcgcert(&["check", "--certs", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not a required generator: t[b3]"), "{}", stdout(&out));
}

#[test]
fn symn_prints_a_row_per_n() {
    let out = mcgcert(&["symn", "--max", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10, "{text}");
    assert!(text.lines().nth(7).unwrap().trim_start().starts_with("7  odd"), "{text}");
}
