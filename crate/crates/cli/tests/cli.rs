use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use four_embed::witness::{verify, VerifyMode};
use four_embed::{EdgeId, Multigraph, VertexId};
use four_embed_cli::format::{parse_edge_list, serialize_edge_list};
use four_embed_cli::report::Report;
use tempfile::TempDir;

const K5_MINUS_E: &str = "0 1\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const OCTAHEDRON: &str = "0 1\n0 2\n0 3\n0 4\n1 2\n2 3\n3 4\n4 1\n5 1\n5 2\n5 3\n5 4\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_four-embed"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn graph_from(report: &Report) -> Multigraph {
    let w = report.witness.as_ref().expect("witness present");
    let mut g = Multigraph::new();
    for &v in &w.vertices {
        g.add_vertex(VertexId(v));
    }
    for (i, &[a, b]) in w.edges.iter().enumerate() {
        g.insert_edge(EdgeId(i as u32), VertexId(a), VertexId(b))
            .unwrap();
    }
    g
}

#[test]
fn k5_minus_e_is_rejected_with_matching_certificate() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k5e.txt", K5_MINUS_E);
    let out = run(&["check", path(&f), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r.verdict, "NOT_EMBEDDABLE");
    assert_eq!(r.certificate.unwrap().kind, "MatchingFailed");
    assert!(r.witness.is_none());

    let text = run(&["check", path(&f)]);
    assert_eq!(text.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("NOT_EMBEDDABLE"));

    let oracle = run(&["check", path(&f), "--oracle"]);
    assert_eq!(oracle.status.code(), Some(1));
}

#[test]
fn octahedron_is_its_own_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "oct.txt", OCTAHEDRON);
    let out = run(&["check", path(&f), "--witness", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r.verdict, "EMBEDDABLE");
    assert!(r.certificate.is_none());
    assert_eq!(graph_from(&r), parse_edge_list(OCTAHEDRON).unwrap());
}

#[test]
fn k4_simple_witness_verifies() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k4.txt", K4);
    let out = run(&[
        "check",
        path(&f),
        "--witness",
        "--simple",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let h = parse_edge_list(K4).unwrap();
    let g = four_embed_cli::format::align_edges(&h, &graph_from(&json(&out)));
    assert!(verify(&g, &h, VerifyMode::Simple).is_empty());
    assert!(g.vertex_count() > h.vertex_count());
    assert_eq!((g.vertex_count() - 4) % 6, 0);

    // the printed witness round-trips through `verify`
    let text = run(&["check", path(&f), "--witness"]);
    assert_eq!(text.status.code(), Some(0));
    let body: String = String::from_utf8(text.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();
    let w = write(&dir, "w.txt", &body);
    assert_eq!(run(&["verify", path(&f), path(&w)]).status.code(), Some(0));
}

#[test]
fn dot_export_marks_added_edges() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let dot = dir.path().join("w.dot");
    let out = run(&["check", path(&f), "--dot", path(&dot)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph witness {"));
    assert_eq!(text.matches("style=solid").count(), 4);
    assert_eq!(text.matches("style=dashed").count(), 4);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "0 1\n1 two\n");
    let multi = write(&dir, "multi.txt", "0 1\n0 1\n");
    let missing = dir.path().join("nope.txt");
    let o = run(&["check", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["check", path(&multi), "--simple"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("simple"));
    assert_eq!(run(&["check", path(&missing)]).status.code(), Some(2));
    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", path(&multi), "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", path(&bad), path(&multi)]).status.code(),
        Some(2)
    );
}

#[test]
fn rejections_before_the_pipeline() {
    let dir = TempDir::new().unwrap();
    let star = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n0 5\n");
    let k33 = write(
        &dir,
        "k33.txt",
        "0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n",
    );
    let r = json(&run(&["check", path(&star), "--format", "json"]));
    assert_eq!(r.certificate.unwrap().vertex, Some(0));
    let o = run(&["check", path(&k33), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let c = json(&o).certificate.unwrap();
    assert_eq!(c.kind, "NonPlanarInput");
    assert_eq!(c.obstruction.unwrap().len(), 9);
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let doubled = write(&dir, "k4d.txt", &format!("{K4}0 1\n2 3\n"));
    let tri = write(&dir, "tri.txt", "0 1\n1 2\n2 0\n");
    let oct = write(&dir, "oct.txt", OCTAHEDRON);
    assert_eq!(
        run(&["verify", path(&k4), path(&doubled)]).status.code(),
        Some(0)
    );
    let o = run(&["verify", path(&k4), path(&k4)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("violation"));
    assert_eq!(
        run(&["verify", path(&tri), path(&oct)]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", path(&tri), path(&oct), "--same-vertices"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", path(&k4), path(&doubled), "--same-vertices"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", path(&tri), path(&oct), "--simple"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", path(&k4), path(&doubled), "--simple"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn selftest_is_deterministic_across_thread_counts() {
    let args = [
        "selftest",
        "--max-n",
        "6",
        "--samples",
        "300",
        "--seed",
        "42",
        "--no-catalog",
    ];
    let a = bin()
        .args(args)
        .env("FOUR_EMBED_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(args)
        .env("FOUR_EMBED_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("disagreements: 0"));
}

#[test]
fn generate_emits_parsable_planar_instances() {
    for extra in [&[][..], &["--grid"][..]] {
        let mut args = vec!["generate", "--n", "40", "--seed", "5"];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        let g = parse_edge_list(&String::from_utf8(out.stdout.clone()).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 40);
        assert!(g.max_degree() <= 4);
        assert_eq!(serialize_edge_list(&g).as_bytes(), &out.stdout[..]);
        assert_eq!(run(&args).stdout, out.stdout);
    }
}
