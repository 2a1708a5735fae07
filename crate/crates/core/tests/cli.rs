use std::path::Path;
use std::process::Command;

use berge_core::certificate::BergeCertificate;
use berge_core::cli::{run, EXIT_FAIL, EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE};
use berge_core::hypergraph::{random_coloring, ColoredHypergraph, Params};

fn berge(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["berge"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_coloring(dir: &Path, name: &str, h: &ColoredHypergraph) -> String {
    let p = dir.join(name);
    std::fs::write(&p, h.to_text()).unwrap();
    p.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn search_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let h = random_coloring(&Params::new(8, 4, 2, 2).unwrap(), 3).unwrap();
    let col = write_coloring(dir.path(), "h.txt", &h);
    let cert = dir.path().join("c.json");
    let (code, _, _) = berge(&["search", &col, "--out", s(&cert)]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = berge(&["verify", s(&cert), &col]);
    assert_eq!((code, out.trim()), (EXIT_OK, "pass"));

    // Duplicate an edge: exit 1, and the message names the invariant.
    let mut c = BergeCertificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    c.edges[1] = c.edges[0].clone();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, c.to_json()).unwrap();
    let (code, out, _) = berge(&["verify", s(&bad), &col]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("duplicate edge"), "{out}");
}

#[test]
fn tightness_in_file_wins_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let h = ColoredHypergraph::monochromatic(7, 4, 1, 1).unwrap();
    let col = write_coloring(dir.path(), "h.txt", &h);
    let cert = dir.path().join("c.json");
    assert_eq!(berge(&["search", &col, "--t", "2", "--out", s(&cert)]).0, EXIT_OK);
    // The certificate says t = 2; asking for t = 4 only counts with --force.
    assert_eq!(berge(&["verify", s(&cert), &col, "--t", "4"]).0, EXIT_OK);
    assert_eq!(berge(&["verify", s(&cert), &col, "--t", "4", "--force"]).0, EXIT_FAIL);
}

#[test]
fn extract_small_and_unresolved() {
    let dir = tempfile::tempdir().unwrap();
    let h = ColoredHypergraph::monochromatic(6, 3, 2, 2).unwrap();
    let col = write_coloring(dir.path(), "mono.txt", &h);
    let (code, out, _) = berge(&["extract", &col]);
    assert_eq!(code, EXIT_OK, "{out}");
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{col}.trace.json")).unwrap()).unwrap();
    assert_eq!(trace["branch"], "generic-search");
    assert_eq!(berge(&["verify", &format!("{col}.cert.json"), &col]).0, EXIT_OK);

    // K_5^4 with two colors on its five edges has no cycle: unresolved.
    let h = ColoredHypergraph::from_colors(5, 4, 2, vec![1, 1, 1, 1, 2]).unwrap();
    let col = write_coloring(dir.path(), "k54.txt", &h);
    assert_eq!(berge(&["extract", &col]).0, EXIT_UNRESOLVED);
    assert_eq!(berge(&["search", &col]).0, EXIT_UNRESOLVED);
}

#[test]
fn extract_k85_random() {
    let dir = tempfile::tempdir().unwrap();
    let h = random_coloring(&Params::new(85, 4, 2, 3).unwrap(), 1).unwrap();
    let col = write_coloring(dir.path(), "k85.txt", &h);
    let cert = dir.path().join("cert.json");
    let trace = dir.path().join("trace.json");
    let (code, _, err) = berge(&["extract", &col, "--out", s(&cert), "--trace", s(&trace)]);
    assert_eq!(code, EXIT_OK, "{err}");
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["branch"], "b-cover");
    assert!(t["fallbacks"].is_array());
    assert_eq!(berge(&["verify", s(&cert), &col]).0, EXIT_OK);
}

#[test]
fn shadow_dump_lines() {
    let dir = tempfile::tempdir().unwrap();
    let h = ColoredHypergraph::monochromatic(5, 3, 2, 1).unwrap();
    let col = write_coloring(dir.path(), "h.txt", &h);
    let (code, out, _) = berge(&["shadow-dump", &col]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "berge-shadow v1");
    assert_eq!(lines[1], "r=3 n=5 c=2 t=2");
    // C(5,2) pairs, each on C(3,1) = 3 triples, all color 1.
    assert_eq!(lines.len(), 2 + 10);
    assert_eq!(lines[2], "0 1 : 3 0 : 1");
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.txt");
    std::fs::write(&p, "berge-coloring v1\nr=3 n=4 c=2\n0 1 2 : 1\n").unwrap();
    let (code, _, err) = berge(&["search", s(&p)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("edges listed"), "{err}");
    assert_eq!(berge(&["search", "/nonexistent/file.txt"]).0, EXIT_USAGE);
    assert_eq!(berge(&["verify", s(&p), s(&p)]).0, EXIT_USAGE);
    assert_eq!(berge(&["stress", "--r", "4"]).0, EXIT_USAGE);
    assert_eq!(berge(&["stress", "--r", "4", "--t", "2", "--c", "2", "--n", "8", "--generator", "nope"]).0, EXIT_USAGE);
    assert_eq!(berge(&["--help"]).0, EXIT_OK);
}

#[test]
fn stress_exit_codes_and_report() {
    let (code, out, err) = berge(&["stress", "--r", "4", "--t", "2", "--c", "2", "--n", "8", "--trials", "20", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("successes=20"), "{err}");
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rep["trials"], 20);

    // Five edges in two colors rarely form a cycle: verified counterexamples.
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = berge(&[
        "stress", "--r", "4", "--t", "2", "--c", "2", "--n", "5", "--trials", "10", "--reproducers", s(dir.path()),
    ]);
    assert_eq!(code, EXIT_FAIL);
    let rep: serde_json::Value = serde_json::from_str(&out).unwrap();
    let first = &rep["counterexamples"][0];
    let path = first["path"].as_str().unwrap();
    let h = ColoredHypergraph::from_text(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(h.to_text(), first["coloring"].as_str().unwrap());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_berge");
    let st = Command::new(bin).args(["verify"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_USAGE));
    let st = Command::new(bin).args(["--version"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
}

#[test]
fn coloring_round_trip() {
    let h = random_coloring(&Params::new(9, 4, 2, 3).unwrap(), 8).unwrap();
    let text = h.to_text();
    let back = ColoredHypergraph::from_text(&text).unwrap();
    assert_eq!(back, h);
    assert_eq!(back.to_text(), text);
}
