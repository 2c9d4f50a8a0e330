use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_instanton-lab"))
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().expect("run instanton-lab")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn bolt_certificate_example() {
    let out = run(&["certify", "--background", "taubbolt", "--N", "1", "--m", "0", "--omega", "1", "--lambda-index", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["verdict"], "certified");
    assert!(f(&v["results"]["min_minus_u"]) > 0.0);
    let modes = v["results"]["certificate"]["modes"].as_array().unwrap();
    let eqs: Vec<&str> = modes.iter().map(|m| m["equation"].as_str().unwrap()).collect();
    assert_eq!(eqs, ["Plain", "Tilded"]);
}

#[test]
fn kerr_static_spectrum_example() {
    let out = run(&["angular", "--background", "kerr", "--M", "1", "--a", "0", "--m", "0", "--omega", "0", "--count", "3", "--out", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let got: Vec<f64> = v["results"]["lambdas"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip([2.0, 8.0, 16.0]) {
        assert!((g - w).abs() < 1e-8, "{got:?}");
    }
}

#[test]
fn off_lattice_pair_is_rejected() {
    let out = run(&["lattice", "--background", "taubbolt", "--m", "0.5", "--omega", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "rejected");
    assert_eq!(v["results"]["accepted"], false);
    assert!(v["results"]["reason"].as_str().unwrap().contains("not an integer"));

    let ok = run(&["lattice", "--background", "taubbolt", "--m", "0.5", "--omega", "1.5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["results"]["n"], 1);
}

#[test]
fn frequency_index_resolves_omega() {
    let v = json(&run(&["lattice", "--background", "taubbolt", "--m", "-0.5", "--n", "2"]));
    assert_eq!(f(&v["results"]["omega"]), 1.5);
    // Kerr a = 0: omega = kappa n with kappa = 1/4.
    let v = json(&run(&["lattice", "--m", "1", "--n", "-3"]));
    assert_eq!(f(&v["results"]["omega"]), -0.75);
    let v = json(&run(&["lattice", "--m", "0.5", "--n", "1"]));
    assert_eq!(v["verdict"], "rejected");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["lattice", "--m", "0", "--omega", "1", "--bogus"],
        vec!["lattice", "--m", "0"],
        vec!["lattice", "--m", "0", "--omega", "1", "--n", "2"],
        vec!["frobnicate"],
        vec!["np-check", "--background", "schwarzschild"],
        vec!["np-check", "--out", "csv"],
        vec!["np-check", "--points", "0"],
        vec!["np-check", "--background", "taubbolt", "--N", "-1"],
        vec!["certify", "--background", "taubbolt", "--m", "0.5", "--omega", "1"],
        vec!["certify", "--m", "0", "--omega", "1", "--Lambda", "3.7"],
        vec!["chart-check", "--probe", "transition"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_lists_defaults() {
    let out = run(&["certify", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in ["--M", "--a", "--N", "--m", "--omega", "--n", "--Lambda", "--lambda-index", "--seed", "[default: 10000]"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
}

#[test]
fn report_envelope_is_canonical() {
    let out = run(&["np-check", "--points", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with("}\n") && !text.trim_end().contains('\n'));
    let v = json(&out);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "params", "residuals", "results", "runtime_ms", "verdict", "version"]);
    assert_eq!(v["command"], "np-check");
    assert_eq!(v["runtime_ms"], Value::Null);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    // Defaults are echoed.
    assert_eq!(v["params"]["seed"], 0);
    assert_eq!(v["params"]["points"], 4);
    assert_eq!(f(&v["params"]["background"]["mass"]), 1.0);
    assert!(text.contains("\"mass\":1.0000000000000000e0"));
    // Re-rendering the parsed value reproduces the bytes.
    assert_eq!(instanton_lab_cli::canonical_json(&v) + "\n", text);
}

#[test]
fn runtime_is_recorded_on_request() {
    let v = json(&run(&["lattice", "--m", "0", "--n", "1", "--record-runtime"]));
    assert!(f(&v["runtime_ms"]) >= 0.0);
    assert_eq!(v["params"]["record_runtime"], true);
}

#[test]
fn lattice_report_matches_golden() {
    let out = run(&["lattice", "--background", "taubbolt", "--m", "0.5", "--omega", "1"]);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/lattice_taubbolt.json");
    let want = std::fs::read_to_string(golden).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want);
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = exe()
        .args(["chart-check", "--background", "taubbolt", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "chart-check: pass\n");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let probes = v["results"]["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 3);
    assert!(probes.iter().all(|p| p["passed"] == true));

    let bad = exe()
        .args(["lattice", "--m", "0", "--n", "1", "--output"])
        .arg(dir.path().join("missing/report.json"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn modescan_csv() {
    let out = run(&["modescan", "--background", "taubbolt", "--m-values", "0", "--n-values", "0,1", "--lambda-count", "2", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..4], ["m", "omega", "n", "equation"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    // Two frequencies, two equations, two separation constants.
    assert_eq!(rows.len(), 8);
    let verdict = header.iter().position(|h| h == "verdict").unwrap();
    let omega = header.iter().position(|h| h == "omega").unwrap();
    for r in &rows {
        let w: f64 = r[omega].parse().unwrap();
        assert_eq!(&r[verdict], if w == 0.0 { "Excluded" } else { "NoMode" });
    }
}

#[test]
fn modescan_json_states_ranges() {
    let out = run(&["modescan", "--m-values", "0", "--n-values", "1", "--equations", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "no modes");
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 3);
    assert!(v["results"]["truncation"].as_str().unwrap().contains("lowest 3"));
    assert!(f(&v["residuals"]["min_delta_w_normalized"]) > 1e-3);
    assert!(f(&v["residuals"]["min_energy"]) > 0.0);
    assert_eq!(v["params"]["m_values"], serde_json::json!([0.0]));
}

#[test]
fn radial_report() {
    let out = run(&["radial", "--m", "1", "--n", "2", "--lambda-index", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "no mode");
    assert!((f(&v["params"]["lambda"]) - 8.0).abs() < 1e-8);
    assert_eq!(v["results"]["singular_points"].as_array().unwrap().len(), 3);
    let fit = &v["results"]["decaying_fit"];
    assert!((f(&fit["fitted"]["rate"]) / f(&fit["expected_rate"]) - 1.0).abs() < 0.05);
    assert!(f(&v["results"]["connection"]["energy"]) > 0.0);

    let st = json(&run(&["radial", "--background", "taubbolt", "--m", "0", "--omega", "0"]));
    assert_eq!(st["verdict"], "no mode");
    assert_eq!(st["results"]["connection"]["verdict"], "Excluded");
    assert_eq!(st["results"]["decaying_fit"], Value::Null);
}

#[test]
fn np_and_weyl_reports() {
    for bg in ["kerr", "taubbolt"] {
        let v = json(&run(&["np-check", "--background", bg, "--points", "10"]));
        assert_eq!(v["verdict"], "pass");
        assert!(f(&v["residuals"]["np_max"]) < 1e-8);
        assert!(v["results"]["equations"].as_object().unwrap().keys().any(|k| k.starts_with('~')));

        let v = json(&run(&["weyl", "--background", bg, "--points", "5", "--a", "0.3"]));
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["results"]["points"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn paper_lattice_flag() {
    // a = 0: Omega = 0, so the paper set is kappa Z for every m and omega = 1/4 passes for m = 1.
    let inv = json(&run(&["lattice", "--m", "1", "--omega", "0.25"]));
    let pap = json(&run(&["lattice", "--m", "1", "--omega", "0.25", "--paper-lattice"]));
    assert_eq!(inv["results"]["accepted"], true);
    assert_eq!(pap["results"]["accepted"], true);
    assert_eq!(pap["params"]["lattice_convention"], "Paper");
    // a != 0 separates the two sets.
    let inv = run(&["lattice", "--a", "0.5", "--m", "1", "--n", "1"]);
    let w = f(&json(&inv)["results"]["omega"]).to_string();
    let pap = run(&["lattice", "--a", "0.5", "--m", "1", "--omega", &w, "--paper-lattice"]);
    assert_eq!(inv.status.code(), Some(0));
    assert_eq!(pap.status.code(), Some(1));
}

#[test]
fn library_entry_point() {
    let o = instanton_lab_cli::run(["instanton-lab", "lattice", "--m", "0", "--omega", "0"]);
    assert_eq!(o.code, 0);
    let rep = o.report.unwrap();
    assert_eq!(rep.verdict, "accepted");
    assert_eq!(o.rendered.unwrap(), rep.to_json());
    let o = instanton_lab_cli::run(["instanton-lab", "--version"]);
    assert_eq!(o.code, 0);
    assert!(o.message.contains(env!("CARGO_PKG_VERSION")));
}
