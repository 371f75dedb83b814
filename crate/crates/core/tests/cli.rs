//! End-to-end runs of the `p2t` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn p2t(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2t")).args(args.iter().map(|a| a.as_ref())).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn single_clause() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/single_clause.cnf")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn reduce_into(dir: &TempDir, cnf: &Path) -> (PathBuf, PathBuf) {
    let (graph, manifest) = (dir.path().join("g.graph"), dir.path().join("m.json"));
    let o = p2t(&[&"reduce", &cnf, &"--graph-out", &graph, &"--manifest-out", &manifest]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    (graph, manifest)
}

#[test]
fn reduce_writes_golden_files() {
    let dir = TempDir::new().unwrap();
    let (graph, manifest) = reduce_into(&dir, &single_clause());
    let golden = |n| std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(n)).unwrap();
    assert_eq!(std::fs::read_to_string(graph).unwrap(), golden("single_clause.graph"));
    assert_eq!(std::fs::read_to_string(manifest).unwrap(), golden("single_clause.manifest.json"));
}

#[test]
fn reduce_refuses_unit_clause() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "unit.cnf", "p cnf 1 1\n1 0\n");
    let (graph, manifest) = (dir.path().join("g.graph"), dir.path().join("m.json"));
    let o = p2t(&[&"reduce", &cnf, &"--graph-out", &graph, &"--manifest-out", &manifest]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("unit clause"), "{}", stdout(&o));
    assert!(!graph.exists() && !manifest.exists());
}

#[test]
fn missing_input_is_a_usage_error() {
    assert_eq!(code(&p2t(&[&"solve-nae", &"/nonexistent/x.cnf"])), 2);
    assert_eq!(code(&p2t(&[&"no-such-command"])), 2);
}

#[test]
fn pipeline_exit_codes() {
    let dir = TempDir::new().unwrap();
    let yes = p2t(&[&"pipeline", &single_clause()]);
    assert_eq!(code(&yes), 0, "{}", stderr(&yes));
    assert!(stdout(&yes).contains("YES"));
    let no = p2t(&[&"pipeline", &write(&dir, "no.cnf", "p cnf 1 1\n1 1 0\n")]);
    assert_eq!(code(&no), 1);
    assert!(stdout(&no).contains("NO"));
    let empty = p2t(&[&"pipeline", &write(&dir, "empty.cnf", "p cnf 2 0\n")]);
    assert_eq!(code(&empty), 0, "{}", stderr(&empty));
}

#[test]
fn solve_nae_prints_evaluation() {
    let o = p2t(&[&"solve-nae", &single_clause()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.starts_with("v ")));
}

#[test]
fn witness_verify_extract() {
    let dir = TempDir::new().unwrap();
    let (graph, manifest) = reduce_into(&dir, &single_clause());
    let partition = dir.path().join("w.partition");
    let o = p2t(&[&"witness", &single_clause(), &"-o", &partition]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = p2t(&[&"verify", &graph, &partition]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("accept"));
    let o = p2t(&[&"extract", &graph, &manifest, &partition]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("v "));
}

#[test]
fn verify_reports_empty_class() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "path.graph", "p2t-graph v1\na b\nb c\n");
    let partition = write(&dir, "all_a.partition", "p2t-partition v1\na b A\nb c A\n");
    let o = p2t(&[&"verify", &graph, &partition]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("class-empty"), "{}", stdout(&o));
}

#[test]
fn stats_after_bounding() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "heavy.cnf", "p cnf 3 4\n1 2 0\n1 3 0\n1 2 3 0\n-1 -2 3 0\n");
    let bounded = dir.path().join("bounded.cnf");
    assert_eq!(code(&p2t(&[&"bound", &cnf, &"-o", &bounded])), 0);
    let (graph, _) = reduce_into(&dir, &bounded);
    let o = p2t(&[&"stats", &graph]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("max degree 4"), "{}", stdout(&o));
}

#[test]
fn export_dot_dashes_purple_edges() {
    let dir = TempDir::new().unwrap();
    let (graph, _) = reduce_into(&dir, &single_clause());
    let o = p2t(&[&"export-dot", &graph]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dashed"));
}

#[test]
fn tiny_node_cap_times_out() {
    let dir = TempDir::new().unwrap();
    let (graph, _) = reduce_into(&dir, &single_clause());
    let o = p2t(&[&"solve", &graph, &"--node-cap", &"1"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    let no = write(&dir, "no.cnf", "p cnf 1 1\n1 1 0\n");
    let o = p2t(&[&"pipeline", &no, &"--node-cap", &"1"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("timeout"));
}

#[test]
fn random_cnf_is_seeded() {
    let a = stdout(&p2t(&[&"random-cnf", &"--seed", &"5"]));
    assert_eq!(a, stdout(&p2t(&[&"random-cnf", &"--seed", &"5"])));
    assert!(a.contains("p cnf"));
}
