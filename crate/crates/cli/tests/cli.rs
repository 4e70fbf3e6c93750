use std::io::Write;
use std::process::{Command, Output};

fn acsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acsc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const SOL3_A: &str = r#"{
  "mode": "real",
  "name": "sol3-A",
  "dimension": 4,
  "brackets": [
    {"pair": [1, 2], "coeffs": {"2": "1"}},
    {"pair": [1, 3], "coeffs": {"3": "-1"}}
  ],
  "J": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]]
}"#;

#[test]
fn jinv_on_sol3_c() {
    let o = acsc(&["jinv", "--corpus", "sol3-C"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("H+ dim 2, H- dim 0, pure yes, full yes"));
}

#[test]
fn serre_on_g_alpha() {
    let o = acsc(&["check", "serre", "--corpus", "G-alpha-112"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS all pages\n");
}

#[test]
fn spectral_csv_from_file_matches_corpus() {
    let f = write_doc(SOL3_A);
    let path = f.path().to_str().unwrap();
    let a = acsc(&["spectral", path, "--page", "1", "--format", "csv"]);
    let b = acsc(&["spectral", "--corpus", "sol3-A", "--page", "1", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let grid: Vec<String> = stdout(&a).lines().skip(1).map(String::from).collect();
    let dim = |p: i64, q: i64| {
        grid.iter()
            .find(|l| l.starts_with(&format!("1,{p},{q},")))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse::<usize>()
            .unwrap()
    };
    let want = [[0, 0, 1], [2, 2, 2], [1, 0, 0]];
    for (i, row) in want.iter().enumerate() {
        for (p, &d) in row.iter().enumerate() {
            assert_eq!(dim(p as i64, 2 - i as i64), d);
        }
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let a = acsc(&["spectral", "--corpus", "sol3-C", "--format", "json"]);
    let b = acsc(&["spectral", "--corpus", "sol3-C", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"degeneration_stage\": 2"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(acsc(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(acsc(&["spectral", "--corpus", "sol3-A", "--format", "xml"]).status.code(), Some(64));
    assert_eq!(acsc(&["spectral"]).status.code(), Some(64));
    assert_eq!(acsc(&["spectral", "--corpus", "nope"]).status.code(), Some(64));
    let bad = write_doc(&SOL3_A.replace("\"-1\"}", "\"0.5\"}"));
    assert_eq!(acsc(&["validate", bad.path().to_str().unwrap()]).status.code(), Some(2));
    let broken = write_doc("{\"mode\": ");
    assert_eq!(acsc(&["validate", broken.path().to_str().unwrap()]).status.code(), Some(2));
    let j = write_doc(&SOL3_A.replace("[\"1\",\"0\",\"0\",\"0\"]", "[\"2\",\"0\",\"0\",\"0\"]"));
    assert_eq!(acsc(&["validate", j.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn metric_flag() {
    let f = write_doc(SOL3_A);
    let good = write_doc(r#"[["2","0","0","0"],["0","2","0","0"],["0","0","1","0"],["0","0","0","1"]]"#);
    let o = acsc(&["check", "serre", f.path().to_str().unwrap(), "--metric", good.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    // Not J-compatible: e1 and e2 have different lengths.
    let bad = write_doc(r#"[["4","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]"#);
    let o = acsc(&["harmonic", f.path().to_str().unwrap(), "--metric", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn complex_mode_document() {
    let doc = write_doc(
        r#"{"mode": "complex", "name": "cu-s1", "dimension": 3, "d_phi": [
            [],
            [{"kind": "(1,1)", "indices": [1, 1], "coeff": {"re": "1", "im": "0"}}],
            [{"kind": "(1,1)", "indices": [1, 2], "coeff": {"re": "1", "im": "0"}},
             {"kind": "(1,1)", "indices": [2, 1], "coeff": {"re": "1/2", "im": "0"}}]
        ]}"#,
    );
    let o = acsc(&["check", "inclusion", doc.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("E01 pages (3, 2), condition no"), "{}", stdout(&o));
}

#[test]
fn corpus_listing_verifies() {
    let o = acsc(&["corpus", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 11);
    assert!(stdout(&o).lines().all(|l| l.contains("PASS")));
}
