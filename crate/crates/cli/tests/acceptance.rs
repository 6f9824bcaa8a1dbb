//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use susyrad::verify::{self, CriterionReport};

const BIN: &str = env!("CARGO_BIN_EXE_susyrad");

struct Line {
    id: u8,
    passed: bool,
    text: String,
}

impl From<CriterionReport> for Line {
    fn from(r: CriterionReport) -> Self {
        Line {
            id: r.id,
            passed: r.passed(),
            text: r.summary(),
        }
    }
}

fn line(id: u8, name: &str, passed: bool, detail: String) -> Line {
    Line {
        id,
        passed,
        text: format!(
            "criterion {id:>2} {name:<28} {}  {detail}",
            if passed { "PASS" } else { "FAIL" }
        ),
    }
}

/// Hydrogen energies through the `spectrum` command.
fn hydrogen_spectrum_cli() -> Line {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["spectrum", "--family", "coulomb", "--dim", "3", "--n", "1..20", "--l", "0"])
        .args(["--format", "json"])
        .output()
        .expect("run susyrad");
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    if !out.status.success() {
        problems.push(format!("exit {:?}", out.status.code()));
    }
    match serde_json::from_slice::<Value>(&out.stdout) {
        Ok(doc) => {
            let rows = doc["rows"].as_array().cloned().unwrap_or_default();
            if rows.len() != 20 {
                problems.push(format!("{} rows", rows.len()));
            }
            for row in rows {
                let n = row["n"].as_f64().unwrap_or(f64::NAN);
                let e = row["energy"].as_f64().unwrap_or(f64::NAN);
                let exact = -0.5 / (n * n);
                let rel = ((e - exact) / exact).abs();
                if !(rel <= worst) {
                    worst = if rel.is_nan() { f64::INFINITY } else { rel };
                }
            }
        }
        Err(e) => problems.push(format!("bad JSON: {e}")),
    }
    let passed = problems.is_empty() && worst <= 1e-14 && elapsed < Duration::from_secs(1);
    line(
        1,
        "hydrogen spectrum (CLI)",
        passed,
        format!(
            "worst={worst:.3e} tol=1e-14 time={:.2}s/1s{}",
            elapsed.as_secs_f64(),
            if problems.is_empty() { String::new() } else { format!("  [{}]", problems.join("; ")) }
        ),
    )
}

fn verify_verb() -> Line {
    let start = Instant::now();
    let out = Command::new(BIN).arg("verify").output().expect("run susyrad verify");
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let rows = text.lines().filter(|l| l.contains(",PASS,") || l.contains(",FAIL,")).count();
    let failed = text.lines().filter(|l| l.contains(",FAIL,")).count();
    let passed = out.status.success() && rows == 9 && failed == 0 && elapsed < Duration::from_secs(180);
    line(
        10,
        "verify verb",
        passed,
        format!(
            "exit={:?} criteria={rows} failed={failed} time={:.2}s/180s",
            out.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let lines: Vec<Line> = vec![
        hydrogen_spectrum_cli(),
        verify::residual_suite().into(),
        verify::orthonormality().into(),
        verify::susy_structure().into(),
        verify::map_identity().into(),
        verify::odd_dimension_map().into(),
        verify::reduction_limits().into(),
        verify::penning_trap().into(),
        verify::laguerre_oracle().into(),
        verify_verb(),
    ];
    for l in &lines {
        println!("{}", l.text);
    }
    let failed: Vec<u8> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", lines.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
