use std::process::{Command, Output};

use dihedral_nullity::{audit_instance, AuditRecord, ConnectingSet, Mode};

fn dnull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dnull"))
        .args(args)
        .output()
        .expect("spawn dnull")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn dot_counts(dot: &str) -> (usize, usize) {
    let vertices = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    (vertices, edges)
}

#[test]
fn analyze_cube_is_nonsingular() {
    let out = dnull(&["analyze", "--mode", "dihedral", "--n", "4", "--rot", "1,3", "--ref", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("paper nullity:  0"), "{text}");
    assert!(text.contains("oracle nullity: 0"), "{text}");
    assert!(text.contains("agreement: equal"));
}

#[test]
fn analyze_reports_undercount() {
    let out = dnull(&[
        "--json", "analyze", "--mode", "dihedral", "--n", "8", "--rot", "1,7", "--ref", "0,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: AuditRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!((r.paper.total, r.oracle.nullity), (6, 10));
    assert_eq!(r.agreement.to_string(), "paper_undercounts");
    let w = r.witness.expect("witness on disagreement");
    assert_eq!(w.nullity_plus + w.nullity_minus, 10);
}

#[test]
fn analyze_cyclic() {
    let out = dnull(&["--json", "analyze", "--mode", "cyclic", "--n", "4", "--rot", "1,3"]);
    let r: AuditRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!((r.paper.total, r.oracle.nullity), (2, 2));
    assert!(r.refl.is_empty());
}

#[test]
fn invalid_set_exits_2() {
    let out = dnull(&["analyze", "--mode", "dihedral", "--n", "4", "--rot", "1", "--ref", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("inverse"), "{err}");

    let out = dnull(&["analyze", "--mode", "cyclic", "--n", "6", "--rot", "2,4"]);
    assert_eq!(out.status.code(), Some(2), "does not generate");
    let out = dnull(&["analyze", "--mode", "cyclic", "--n", "6", "--rot", "2,4", "--ref", "1"]);
    assert_eq!(out.status.code(), Some(2), "reflections in cyclic mode");
}

#[test]
fn disconnected_allowed_on_request() {
    let out = dnull(&[
        "--allow-disconnected", "analyze", "--mode", "cyclic", "--n", "6", "--rot", "2,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_error_exits_1() {
    assert_eq!(dnull(&["analyze", "--bogus"]).status.code(), Some(1));
    assert_eq!(dnull(&["analyze", "--mode", "square", "--n", "4"]).status.code(), Some(1));
    assert_eq!(dnull(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_3() {
    let out = dnull(&[
        "export", "--mode", "dihedral", "--n", "3", "--ref", "0,1,2", "--format", "dot", "-o",
        "/nonexistent-dir/x.dot",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dot_export_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.dot");
    let out = dnull(&[
        "export", "--mode", "dihedral", "--n", "4", "--rot", "1,3", "--ref", "0", "--format",
        "dot", "-o", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dot_counts(&std::fs::read_to_string(&path).unwrap()), (8, 12));

    let out = dnull(&["export", "--mode", "dihedral", "--n", "3", "--ref", "0,1,2", "--format", "dot"]);
    assert_eq!(dot_counts(&stdout(&out)), (6, 9));
}

#[test]
fn json_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.json");
    let out = dnull(&[
        "export", "--mode", "dihedral", "--n", "8", "--rot", "1,7", "--ref", "0,2", "--format",
        "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: AuditRecord =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cs = ConnectingSet::new(8, [1, 7], [0, 2]).unwrap();
    assert_eq!(parsed, audit_instance(&cs, Mode::Dihedral, true).unwrap());
}

#[test]
fn csv_export_columns() {
    let out = dnull(&[
        "export", "--mode", "dihedral", "--n", "8", "--rot", "1,7", "--ref", "0,2", "--format", "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mode,n,rot,ref,paper_total,oracle_nullity,agreement");
    assert_eq!(lines[1], "dihedral,8,1 7,0 2,6,10,paper_undercounts");
}

#[test]
fn null_vector_check() {
    let out = dnull(&[
        "null-vector-check", "--mode", "dihedral", "--n", "8", "--rot", "1,7", "--ref", "0,2",
        "--d", "4", "--source", "minus",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("kernel vector: yes"));

    // Φ_8 divides neither polynomial.
    let out = dnull(&[
        "null-vector-check", "--mode", "dihedral", "--n", "8", "--rot", "1,7", "--ref", "0,2",
        "--d", "8", "--source", "plus",
    ]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn census_small_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d3.csv");
    let out = dnull(&[
        "--json", "census", "--mode", "dihedral", "--n", "3", "--exhaustive", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let records: Vec<AuditRecord> = lines[..lines.len() - 1]
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // R={1,2} with any of 7 nonempty S, plus 4 generating S with R empty.
    assert_eq!(records.len(), 11);
    assert!(records.iter().all(|r| r.paper.total <= r.oracle.nullity));
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["violations"], 0);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 12);
}

#[test]
fn audit_passes_on_small_range() {
    let out = dnull(&["audit", "--mode", "dihedral", "--n-min", "3", "--n-max", "5", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("result: PASS"));
}

#[test]
fn sampled_census_is_deterministic() {
    let args = [
        "--json", "--seed", "7", "census", "--mode", "dihedral", "--n-min", "12", "--n-max", "14",
        "--sample", "5",
    ];
    let a = stdout(&dnull(&args));
    assert_eq!(a, stdout(&dnull(&args)));
    assert_eq!(a.lines().count(), 16);
}
