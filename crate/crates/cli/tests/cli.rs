use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn semitoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semitoric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn classify_reference_has_two_focus_focus() {
    let out = semitoric(&[
        "classify", "--R", "1", "2", "--t", "0.25", "0.25", "0.5", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = records(&out);
    assert_eq!(header.len(), 16);
    let ty = column(&header, "type");
    let types: Vec<&str> = rows.iter().map(|r| r[ty].as_str()).collect();
    assert_eq!(types, ["EE", "FF", "FF", "EE"]);
}

#[test]
fn classify_corner_has_no_focus_focus() {
    let out = semitoric(&["classify", "--s", "0", "0", "--R", "1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = records(&out);
    let ty = column(&header, "type");
    assert!(rows.iter().all(|r| r[ty] != "FF"));
}

#[test]
fn classify_rejects_unordered_radii() {
    let out = semitoric(&[
        "classify", "--R", "2", "1", "--t", "0.25", "0.25", "0.5", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn classify_signals_degeneracy() {
    let s = "0.25029081336802034";
    let out = semitoric(&["classify", "--R", "1", "2", "--s", s, s]);
    assert_eq!(out.status.code(), Some(2));
    let (header, rows) = records(&out);
    let deg = column(&header, "degenerate");
    assert_eq!(rows[1][deg], "true");
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(semitoric(&["sweep", "--grid", "3"]).status.code(), Some(1));
    assert_eq!(semitoric(&["gamma", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(
        semitoric(&["classify", "--s", "1.5", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(semitoric(&["classify", "--bogus"]).status.code(), Some(1));
}

#[test]
fn sweep_row_count_and_order() {
    let out = semitoric(&["sweep", "--R", "1", "2", "--grid", "101"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = records(&out);
    assert_eq!(header, ["s1", "s2", "count", "degenerate"]);
    assert_eq!(rows.len(), 10201);
    let s = |r: &Vec<String>, k: usize| r[k].parse::<f64>().unwrap();
    assert_eq!((s(&rows[1], 0), s(&rows[1], 1)), (0.0, 0.01));
    assert_eq!(s(&rows[101], 0), 0.01);
    assert_eq!(rows[0][2], "0");
    assert_eq!(rows[5100][2], "2");
}

#[test]
fn gamma_crosses_diagonal_at_known_points() {
    let out = semitoric(&["gamma", "--R", "1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = records(&out);
    let mut crossings: Vec<f64> = rows
        .iter()
        .map(|r| (r[2].parse::<f64>().unwrap(), r[3].parse::<f64>().unwrap()))
        .filter(|&(a, b)| a == b && a > 1e-6 && a < 1.0 - 1e-6)
        .map(|(a, _)| a)
        .collect();
    crossings.sort_by(f64::total_cmp);
    crossings.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    assert_eq!(crossings.len(), 2, "{crossings:?}");
    assert!((crossings[0] - 0.2503).abs() < 1e-4);
    assert!((crossings[1] - 0.8570).abs() < 1e-4);
}

#[test]
fn image_has_four_markers() {
    let out = semitoric(&[
        "image", "--s", "0.5", "0.5", "--R", "1", "2", "--grid", "21",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = records(&out);
    let rec = column(&header, "record");
    let kinds: Vec<&str> = rows
        .iter()
        .filter(|r| r[rec] == "marker")
        .map(|r| r[column(&header, "kind")].as_str())
        .collect();
    assert_eq!(kinds, ["NN", "NS", "SN", "SS"]);
    assert_eq!(rows.iter().filter(|r| r[rec] == "envelope").count(), 21);
}

#[test]
fn polygon_lists_four_shapes() {
    let out = semitoric(&["polygon", "--R", "1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = records(&out);
    assert_eq!(header, ["polygon_id", "vx", "vy"]);
    let mut ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    ids.dedup();
    assert_eq!(ids, ["0", "1", "2", "3"]);
}

#[test]
fn json_mirrors_csv() {
    let csv_out = semitoric(&["classify", "--s", "0.3", "0.6"]);
    let json_out = semitoric(&["classify", "--s", "0.3", "0.6", "--format", "json"]);
    let (header, rows) = records(&csv_out);
    let doc: Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "classify");
    assert_eq!(doc["meta"]["params"]["s"][1], 0.6);
    let jrows = doc["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), rows.len());
    for (row, obj) in rows.iter().zip(jrows) {
        for (k, text) in header.iter().zip(row) {
            let v = &obj[k];
            match v {
                Value::Number(n) if text.contains('e') => {
                    assert_eq!(n.as_f64().unwrap(), text.parse::<f64>().unwrap(), "{k}")
                }
                Value::Number(n) => assert_eq!(n.to_string(), *text),
                Value::String(s) => assert_eq!(s, text),
                Value::Bool(b) => assert_eq!(b.to_string(), *text),
                other => panic!("unexpected {k}: {other}"),
            }
        }
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("sweep.csv");
    std::fs::write(
        &cfg,
        format!(
            "R = [1.0, 2.0]\ngrid = 40\nout = {:?}\n",
            out.display().to_string()
        ),
    )
    .unwrap();
    let cfg_arg = cfg.to_str().unwrap();

    let res = semitoric(&["sweep", "--config", cfg_arg]);
    assert_eq!(res.status.code(), Some(0));
    assert!(res.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 40 * 40);

    let res = semitoric(&["sweep", "--config", cfg_arg, "--grid", "20"]);
    assert_eq!(res.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 20 * 20);

    std::fs::write(&cfg, "grid = 40\nunknown = 1\n").unwrap();
    assert_eq!(
        semitoric(&["sweep", "--config", cfg_arg]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_quick_passes_fast() {
    let start = Instant::now();
    let out = semitoric(&["verify", "--quick"]);
    assert!(start.elapsed() < Duration::from_secs(5));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_full_passes() {
    let out = semitoric(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_injected_fault() {
    let out = semitoric(&["verify", "--quick", "--inject-fault", "delta-sign"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("reference-types"));
}
