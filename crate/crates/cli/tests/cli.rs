use std::io::Write;
use std::process::{Command, Output};

use regcert_core::parse_graph6;

const CUBIC: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/cubic_connected_le10.g6");

fn regcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regcert"))
        .args(args)
        .env_remove("CERT_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn analyze_k4() {
    let o = regcert(&["analyze", "C~"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["matching"]["guarantee_main"]["value"], 2);
    assert_eq!(cert["matching"]["achieved"], 3);
    assert_eq!(cert["toughness"]["exact"]["value"]["kind"], "infinite");
    assert_eq!(cert["flags"]["anomaly"], false);
}

#[test]
fn analyze_gd3() {
    let g = stdout(&regcert(&["gen", "gd", "--d", "3"]));
    let o = regcert(&["analyze", g.trim()]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["matching"]["guarantee_main"]["value"], 0);
    assert_eq!(cert["matching"]["target_met"], true);
    assert_eq!(cert["toughness"]["is_gd"], true);
    assert_eq!(cert["toughness"]["prediction"], "t<=1 (G_d)");
    assert_eq!(cert["flags"]["borderline"], true);
}

#[test]
fn analyze_c5_edge_list_is_partial() {
    let o = regcert(&["analyze", "5\n0 1\n1 2\n2 3\n3 4\n4 0\n"]);
    assert_eq!(o.status.code(), Some(2));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(cert["matching"].is_null());
    assert_eq!(cert["toughness"]["exact"]["value"]["num"], 2);
    assert_eq!(cert["toughness"]["exact"]["value"]["den"], 2);
    let violations = cert["violations"].as_array().unwrap();
    assert!(violations.contains(&"odd_order".into()));
}

#[test]
fn analyze_reads_files_and_stdin() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "C~").unwrap();
    let o = regcert(&["analyze", f.path().to_str().unwrap(), "--format", "csv-summary"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(
        "graph_id,n,d,lambda2,guarantee,achieved,toughness_value,prediction,consistent,borderline\n"
    ));

    let mut child = Command::new(env!("CARGO_BIN_EXE_regcert"))
        .args(["analyze", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"4\n0 1\n1 2\n2 3\n3 0\n0 2\n1 3\n").unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(0));
}

#[test]
fn parse_errors_exit_1_with_offset() {
    let o = regcert(&["analyze", "C~~"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte"));
    let o = regcert(&["analyze", "3\n0 1\n1 1\n"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at line 3"));
    assert_eq!(regcert(&["analyze", "C~", "--epsilon", "0"]).status.code(), Some(1));
    assert_eq!(regcert(&["nonsense"]).status.code(), Some(1));
}

#[test]
fn input_format_override() {
    // "5" alone is auto-detected as an edge list with no edges
    assert_eq!(regcert(&["analyze", "5"]).status.code(), Some(2));
    assert_eq!(regcert(&["analyze", "5", "--input-format", "graph6"]).status.code(), Some(1));
}

#[test]
fn gen_examples() {
    let o = regcert(&["gen", "gd", "--d", "3"]);
    let g = parse_graph6(stdout(&o).trim()).unwrap();
    assert_eq!((g.order(), g.size()), (8, 12));

    let o = regcert(&["gen", "random-regular", "--n", "10", "--d", "3", "--count", "5", "--seed", "7"]);
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    for l in &lines {
        let g = parse_graph6(l).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_connected());
    }
    let again = regcert(&["gen", "random-regular", "--n", "10", "--d", "3", "--count", "5", "--seed", "7"]);
    assert_eq!(o.stdout, again.stdout);

    assert_eq!(regcert(&["gen", "gd", "--d", "2"]).status.code(), Some(1));
    assert_eq!(regcert(&["gen", "random-regular", "--n", "5", "--d", "3"]).status.code(), Some(1));
}

#[test]
fn gen_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    let o = regcert(&["gen", "gd", "--d", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(parse_graph6(text.trim()).unwrap().order(), 11);
}

#[test]
fn cert_seed_fallback() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_regcert"));
        c.args(args).env_remove("CERT_SEED");
        if let Some(s) = env {
            c.env("CERT_SEED", s);
        }
        c.output().unwrap()
    };
    let o = run(Some("42"), &["analyze", "C~"]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["seed"], 42);
    let o = run(Some("42"), &["analyze", "C~", "--seed", "5"]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["seed"], 5);
}

#[test]
fn certificates_are_byte_identical() {
    let a = regcert(&["analyze", "IheA@GUAo", "--seed", "3"]);
    let b = regcert(&["analyze", "IheA@GUAo", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corpus_of_cubic_graphs() {
    let o = regcert(&["corpus", CUBIC, "--jobs", "4", "--seed", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    let (certs, agg) = rows.split_at(rows.len() - 1);
    assert_eq!(certs.len(), 27);
    let agg = &agg[0]["aggregate"];
    assert_eq!(agg["processed"], 27);
    assert_eq!(agg["anomaly"], 0);
    assert_eq!(agg["skipped"], 0);
    // input order and per-line seeds
    let input: Vec<_> = std::fs::read_to_string(CUBIC).unwrap().lines().map(String::from).collect();
    for (i, c) in certs.iter().enumerate() {
        assert_eq!(c["graph_id"], input[i].as_str());
        assert_eq!(c["seed"], 100 + i as u64);
    }
    // single-threaded output is identical
    let serial = regcert(&["corpus", CUBIC, "--jobs", "1", "--seed", "100"]);
    assert_eq!(o.stdout, serial.stdout);
}

#[test]
fn corpus_edge_cases() {
    let empty = tempfile::NamedTempFile::new().unwrap();
    let o = regcert(&["corpus", empty.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 1);
    let agg = &rows[0]["aggregate"];
    for key in ["processed", "consistent", "anomaly", "borderline", "skipped"] {
        assert_eq!(agg[key], 0, "{key}");
    }

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "C~\nnot graph6 at all\nIheA@GUAo").unwrap();
    let o = regcert(&["corpus", f.path().to_str().unwrap(), "--format", "csv-summary"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"skipped\":1"));

    assert_eq!(regcert(&["corpus", "/nonexistent/file.g6"]).status.code(), Some(1));
}

#[test]
fn exhaustive_limit_forms() {
    // toughness enumeration off for n = 10 when the limit is 8
    let o = regcert(&["analyze", "IheA@GUAo", "--exhaustive-limit", "8"]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(cert["toughness"]["exact"].is_null());
    let o = regcert(&["analyze", "IheA@GUAo", "--exhaustive-limit", "pm-family=8,tutte=10"]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(cert["matching"]["oracle_max"].is_null());
    assert!(!cert["toughness"]["exact"].is_null());
    assert_eq!(regcert(&["analyze", "C~", "--exhaustive-limit", "foo=3"]).status.code(), Some(1));
}

#[test]
fn selfcheck_passes() {
    let o = regcert(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 5);
}

#[test]
fn schema_matches_output() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/certificate.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cert: serde_json::Value = serde_json::from_str(&stdout(&regcert(&["analyze", "C~"]))).unwrap();
    let keys = |v: &serde_json::Value| {
        let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    let required = |v: &serde_json::Value| {
        let mut k: Vec<String> = v["required"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        k.sort();
        k
    };
    assert_eq!(required(&schema), keys(&cert));
    assert_eq!(required(&schema["$defs"]["matching"]), keys(&cert["matching"]));
    assert_eq!(required(&schema["$defs"]["toughness"]), keys(&cert["toughness"]));
    assert_eq!(schema["properties"]["tool_version"]["const"], cert["tool_version"]);
}
