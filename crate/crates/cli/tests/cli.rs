use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{Map, Value};

const BIN: &str = env!("CARGO_BIN_EXE_susyrad");

fn config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/illustrative.toml")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SUSYRAD_CONFIG")
        .output()
        .expect("run susyrad")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn rows(doc: &Value) -> &Vec<Value> {
    doc["rows"].as_array().expect("rows")
}

fn diagnostic(doc: &Value, name: &str) -> f64 {
    doc["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["name"] == name)
        .unwrap_or_else(|| panic!("no diagnostic {name}"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn hydrogen_energies() {
    let doc = json(&["spectrum", "--family", "coulomb", "--dim", "3", "--n", "1..3", "--l", "0"]);
    let e: Vec<f64> = rows(&doc).iter().map(|r| r["energy"].as_f64().unwrap()).collect();
    assert_eq!(e, vec![-0.5, -0.125, -1.0 / 18.0]);
}

#[test]
fn oscillator_parity_rows() {
    let doc = json(&["spectrum", "--family", "oscillator", "--dim", "2", "--N", "0..2", "--L", "0"]);
    let r = rows(&doc);
    assert_eq!(r[0]["energy"], 1.0);
    assert_eq!(r[1]["status"], "rejected");
    assert!(r[1]["reason"].as_str().unwrap().contains("parity"));
    assert_eq!(r[2]["energy"], 3.0);
}

#[test]
fn zero_defect_config_matches_coulomb() {
    let dir = std::env::temp_dir().join(format!("susyrad-zero-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("zero.toml");
    std::fs::write(&cfg, "format_version = 1\n[[defect]]\ndimension = 3\nl = 0\ndelta = 0.0\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = json(&["spectrum", "--family", "coulomb", "--dim", "3", "--n", "1..6", "--l", "0..2"]);
    let b = json(&["spectrum", "--family", "defect", "--dim", "3", "--n", "1..6", "--l", "0..2", "--config", cfg]);
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn defect_family_needs_config() {
    let out = run(&["spectrum", "--family", "defect", "--dim", "3", "--n", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("SUSYRAD_CONFIG"));
}

#[test]
fn config_from_environment() {
    let out = Command::new(BIN)
        .args(["spectrum", "--family", "defect", "--dim", "3", "--n", "2", "--l", "0"])
        .env("SUSYRAD_CONFIG", config_path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2,0,1.6,0.6,-0.1953125,ok,"), "{text}");
}

#[test]
fn hydrogen_wavefunction() {
    let doc = json(&["wavefunction", "--family", "hydrogen", "--n", "1", "--l", "0", "--grid", "0.1..10", "--points", "100"]);
    let r = rows(&doc);
    assert_eq!(r.len(), 100);
    for row in r {
        let (x, v) = (row["r"].as_f64().unwrap(), row["amplitude"].as_f64().unwrap());
        assert!((v - 2.0 * (-x).exp()).abs() < 1e-12);
    }
    assert!(diagnostic(&doc, "residual") <= 1e-8);
}

#[test]
fn node_count_matches_degree() {
    for args in [
        vec!["--family", "coulomb", "--dim", "3", "--n", "5", "--l", "1"],
        vec!["--family", "coulomb", "--dim", "2", "--n", "4", "--l", "0"],
        vec!["--family", "oscillator", "--dim", "3", "--N", "8", "--L", "2"],
    ] {
        let mut all = vec!["wavefunction", "--grid", "0.1..5"];
        all.extend(args);
        let doc = json(&all);
        assert_eq!(diagnostic(&doc, "node_count"), diagnostic(&doc, "laguerre_degree"));
        assert!(diagnostic(&doc, "residual") <= 1e-8);
    }
}

#[test]
fn inadmissible_wavefunction_is_fatal() {
    let out = run(&["wavefunction", "--family", "oscillator", "--dim", "3", "--N", "3", "--L", "0", "--grid", "0.1..5"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parity"));
}

#[test]
fn map_examples() {
    let doc = json(&["map", "--d", "3", "--n", "2", "--l", "0", "--lambda", "1", "--mode", "exact"]);
    let r = &rows(&doc)[0];
    assert_eq!((r["D"].as_u64(), r["N"].as_u64(), r["L"].as_u64()), (Some(2), Some(3), Some(1)));
    assert!(r["constancy_defect"].as_f64().unwrap() <= 1e-8);

    let doc = json(&["map", "--d", "3", "--n", "2", "--l", "0", "--lambda", "0.5", "--mode", "exact"]);
    assert_eq!(rows(&doc)[0]["reason"], "λ not integer in exact mode");

    let doc = json(&[
        "map", "--d", "3", "--n", "1", "--l", "0", "--mode", "broken", "--delta", "0", "--Delta", "0.25",
        "--lambda", "0.5",
    ]);
    let r = &rows(&doc)[0];
    assert_eq!(r["status"], "ok");
    assert_eq!(r["D"], 3);
}

#[test]
fn map_sweep_keeps_going() {
    let doc = json(&["map", "--d", "3", "--n", "1", "--l", "0", "--lambda", "0..2"]);
    let status: Vec<&str> = rows(&doc).iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(status, vec!["ok", "ok", "rejected"]);
    assert!(rows(&doc)[2]["reason"].as_str().unwrap().contains("D < 2"));
}

#[test]
fn trap_operating_point_round_trip() {
    let doc = json(&["trap", "operating-point", "--B", "5.87", "--d-trap", "3.5e-3", "--species", "proton"]);
    assert!(diagnostic(&doc, "frequency_ratio_error") <= 1e-12);
    let v = rows(&doc)[0]["V_volt"].as_f64().unwrap();
    let v = v.to_string();
    let doc = json(&["trap", "frequencies", "--B", "5.87", "--d-trap", "3.5e-3", "--species", "proton", "--V", &v]);
    let ratio = rows(&doc)[0]["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() <= 1e-12);
}

#[test]
fn unstable_trap_is_fatal() {
    let out = run(&["trap", "frequencies", "--B", "1", "--d-trap", "1e-3", "--species", "electron", "--V", "5"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("e*V > 0"));
}

#[test]
fn unperturbed_geonium_levels() {
    let doc = json(&["trap", "levels", "--N", "0..8", "--Delta", "0"]);
    for r in rows(&doc) {
        assert_eq!(r["energy_quanta"].as_f64().unwrap(), r["N"].as_f64().unwrap() + 1.0);
    }
}

#[test]
fn susy_pair_spectra() {
    let doc = json(&["susy-pair", "--family", "coulomb", "--dim", "3", "--l", "0", "--count", "5"]);
    let r = rows(&doc);
    assert_eq!(r[0]["bosonic"], 0.0);
    assert!(r[0]["fermionic"].is_null());
    for row in &r[1..] {
        assert_eq!(row["bosonic"], row["fermionic"]);
    }
    assert!(diagnostic(&doc, "ground_annihilation") <= 1e-8);
}

#[test]
fn json_round_trips_through_schema() {
    for args in [
        vec!["spectrum", "--family", "oscillator", "--dim", "3", "--N", "0..4", "--L", "0..2"],
        vec!["map", "--d", "4", "--n", "3", "--l", "1", "--lambda", "0..1"],
        vec!["susy-pair", "--family", "oscillator", "--dim", "2", "--l", "1"],
    ] {
        let mut all = args.clone();
        all.extend(["--format", "json"]);
        let out = run(&all);
        let text = String::from_utf8(out.stdout).unwrap();

        #[derive(serde::Deserialize, serde::Serialize)]
        struct Diagnostic {
            name: String,
            value: f64,
            tolerance: f64,
        }
        #[derive(serde::Deserialize, serde::Serialize)]
        struct Record {
            command: String,
            inputs: Value,
            rows: Vec<Map<String, Value>>,
            diagnostics: Vec<Diagnostic>,
        }
        let record: Record = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&record).unwrap();
        again.push('\n');
        assert_eq!(again, text);
    }
}

#[test]
fn csv_has_header_and_trailer() {
    let out = run(&["map", "--d", "3", "--n", "2", "--l", "0", "--lambda", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("lambda,delta,i,Delta,I,D,N,L,status"));
    assert!(lines.last().unwrap().starts_with("# max_constancy_defect = "));
}

#[test]
fn writes_to_out_path() {
    let path = std::env::temp_dir().join(format!("susyrad-out-{}.csv", std::process::id()));
    let out = run(&["spectrum", "--family", "coulomb", "--dim", "3", "--n", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,l,n_star,l_star,energy,status,reason\n1,0,1,0,-0.5,ok,"));
    std::fs::remove_file(path).ok();
}

#[test]
fn unknown_family_is_a_parse_error() {
    let out = run(&["spectrum", "--family", "muonium", "--dim", "3", "--n", "1"]);
    assert!(!out.status.success());
}
