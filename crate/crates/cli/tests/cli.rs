//! End-to-end checks of the binary: exit codes, deterministic output, and
//! the solver-free re-verification of emitted reports.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ricciflat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ricciflat-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn check_flat_exit_codes() {
    let c6 = tmp("c6.el");
    fs::write(&c6, "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let out = run(&["check-flat", c6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let c5 = tmp("c5.el");
    fs::write(&c5, "0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let out = run(&["check-flat", c5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("k ="), "witness missing: {}", text);

    let out = run(&["check-flat", "--catalog", "petersen"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_and_disconnect_exit_codes() {
    let bad = tmp("bad.el");
    fs::write(&bad, "0 0\n").unwrap();
    let out = run(&["curvature", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let disc = tmp("disc.el");
    fs::write(&disc, "0 1\n2 3\n").unwrap();
    let out = run(&["curvature", disc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn curvature_reports_are_deterministic_and_verifiable() {
    let a = run(&["curvature", "--catalog", "g8"]);
    let b = run(&["curvature", "--catalog", "g8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "identical invocations must byte-match");

    let report = tmp("g8.json");
    fs::write(&report, &a.stdout).unwrap();
    let out = run(&["verify-report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Tampering with a curvature value must be caught.
    let tampered = stdout(&a).replace("\"k\": \"0\"", "\"k\": \"1/7\"");
    assert_ne!(tampered, stdout(&a));
    let bad = tmp("g8-bad.json");
    fs::write(&bad, tampered).unwrap();
    let out = run(&["verify-report", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curvature_at_requested_idleness() {
    let out = run(&["curvature", "--catalog", "g7_icosidodecahedron", "--alpha", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let edges = doc["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 60);
    for e in edges {
        assert_eq!(e["k"], "0");
        assert_eq!(e["k_alpha"], "0");
        assert_eq!(e["flat"], true);
    }
    assert_eq!(doc["flat"], true);
}

#[test]
fn classify_catalog_graph() {
    let out = run(&["classify", "--catalog", "g8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = &doc["structure"];
    assert_eq!(s["violations"].as_array().unwrap().len(), 0);
    assert_eq!(s["type5b_excluded"], true);
    let tags = s["classifications"].as_array().unwrap();
    assert_eq!(tags.len(), 20);
    assert!(tags.iter().all(|c| !c["tag"].as_str().unwrap().is_empty()));
}

#[test]
fn catalog_list_and_emit() {
    let out = run(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in [
        "petersen",
        "dodecahedral",
        "half_dodecahedral",
        "triplex",
        "g7_icosidodecahedron",
        "figure32",
        "c4_chain",
        "lattice4",
        "type_c",
    ] {
        assert!(text.contains(name), "missing {} in list", name);
    }

    let out = run(&["catalog", "emit", "petersen", "--format", "graph6"]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    let g = ricciflat_core::codec::parse_graph6(line.trim()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 15));

    let out = run(&["catalog", "emit", "family=c4_chain k=1 mode=quotient"]);
    assert_eq!(out.status.code(), Some(0));
    let g = ricciflat_core::codec::parse_edge_list(&stdout(&out)).unwrap();
    assert_eq!(g.n(), 9);

    let out = run(&["catalog", "emit", "no_such_graph"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_streams_graph6() {
    let out = run(&["enumerate", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<&str> = stdout(&out).lines().collect();
    assert!(!lines.is_empty());
    for line in &lines {
        let g = ricciflat_core::codec::parse_graph6(line).unwrap();
        assert!(g.n() <= 5);
        assert!(g.min_degree() >= 2);
        assert!(g.max_degree() <= 4);
    }
    // Cap refusal without the override flag.
    let out = run(&["enumerate", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn find_flat_reports_expected_certificates() {
    let out = run(&["find-flat", "--max-n", "8", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let hits = doc["hits"].as_array().unwrap();
    assert_eq!(hits.len(), 3, "{}", stdout(&out));
    let mut expected = Vec::new();
    for n in 6..=8usize {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = ricciflat_core::Graph::from_edges(n, &edges).unwrap();
        expected.push(ricciflat_core::canon::canonical_certificate(&g).unwrap().to_hex());
    }
    let got: Vec<String> =
        hits.iter().map(|h| h["certificate"].as_str().unwrap().to_owned()).collect();
    assert_eq!(got, expected);
}

#[test]
fn idleness_table_output() {
    let out = run(&["idleness", "--catalog", "g8", "--edge", "0", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pieces:"));
    assert!(text.contains("alpha = 1/5"));
    assert!(text.contains("k = 0"));
}

#[test]
fn patch_emission() {
    let out = run(&["catalog", "emit", "family=lattice4 mode=patch radius=4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# patch; boundary vertices:"));
    let g = ricciflat_core::codec::parse_edge_list(&text).unwrap();
    assert!(g.max_degree() <= 4);
}
