use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polysparse::io::{parse_dimacs, parse_pcsp};
use tempfile::TempDir;

fn polysparse(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysparse"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const CNF: &str = "c five clauses\np cnf 5 6\n1 2 3 0\n-1 4 0\n2 -3 5 0\n1 2 3 0\n3 4 -5 0\n-2 5 0\n";

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.cnf"), CNF).unwrap();
    dir
}

#[test]
fn exact_pipeline_meets_bound() {
    let dir = workspace();
    let p = dir.path();
    assert_eq!(code(&polysparse(&["encode", "--scheme", "exact", "--in", "f.cnf", "--out", "e.pcsp"], p)), 0);
    assert_eq!(code(&polysparse(&["sparsify", "--method", "field", "--in", "e.pcsp", "--out", "s.pcsp"], p)), 0);
    let out = polysparse(&["stats", "--in", "s.pcsp"], p);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let kept: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("constraints: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(kept <= 6, "{text}");
    assert!(text.contains("bound n^d+1: 6"), "{text}");

    let v = polysparse(&["verify", "--a", "e.pcsp", "--b", "s.pcsp"], p);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout(&v), "equivalent\n");
}

#[test]
fn verify_reports_inequivalence() {
    let dir = workspace();
    let p = dir.path();
    fs::write(p.join("a.pcsp"), "pcsp Q 2 1 root\n1 v1 + -1\n").unwrap();
    fs::write(p.join("b.pcsp"), "pcsp Q 2 1 root\n1 v2 + -1\n").unwrap();
    let v = polysparse(&["verify", "--a", "a.pcsp", "--b", "b.pcsp"], p);
    assert_eq!(code(&v), 1);
    assert_eq!(stdout(&v), "not equivalent\n");
}

#[test]
fn composite_nonroot_is_usage_error() {
    let dir = workspace();
    let p = dir.path();
    assert_eq!(
        code(&polysparse(&["encode", "--scheme", "cnf-nonroot", "--in", "f.cnf", "--out", "n.pcsp"], p)),
        0
    );
    let o = polysparse(&["sparsify", "--method", "nonroot", "--mod", "6", "--in", "n.pcsp"], p);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unsupported ring"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let o = polysparse(&["sparsify", "--method", "nonroot", "--mod", "7", "--in", "n.pcsp", "--out", "k.pcsp"], p);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let kept = parse_pcsp(&fs::read_to_string(p.join("k.pcsp")).unwrap()).unwrap();
    assert!(kept.len() <= 5usize.pow(6) + 1);
    assert_eq!(kept.ring().modulus(), Some(7));
}

#[test]
fn exit_codes() {
    let dir = workspace();
    let p = dir.path();
    fs::write(p.join("bad.pcsp"), "pcsp Q 2 1 root\n1 v1 + 0\n").unwrap();
    let o = polysparse(&["stats", "--in", "bad.pcsp"], p);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 2, column 8"), "{}", stderr(&o));

    assert_eq!(code(&polysparse(&["stats", "--in", "missing.pcsp"], p)), 2);
    assert_eq!(code(&polysparse(&["sparsify", "--method", "magic", "--in", "x"], p)), 2);
    assert_eq!(code(&polysparse(&["--help"], p)), 0);

    fs::write(p.join("big.pcsp"), "pcsp Q 25 1 root\n1 v25\n").unwrap();
    let o = polysparse(&["verify", "--a", "big.pcsp", "--b", "big.pcsp"], p);
    assert_eq!(code(&o), 4);
    let o = polysparse(&["verify", "--a", "big.pcsp", "--b", "big.pcsp", "--limit", "10"], p);
    assert_eq!(code(&o), 4);

    fs::write(p.join("h.pcsp"), "pcsp Q 2 1 root\n1 v1\n").unwrap();
    let o = polysparse(&["sparsify", "--method", "howell", "--in", "h.pcsp"], p);
    assert_eq!(code(&o), 2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = workspace();
    let p = dir.path();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let o = polysparse(&["encode", "--scheme", "nae", "--in", "f.cnf"], p);
            assert_eq!(code(&o), 0);
            o.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    fs::write(p.join("nae.pcsp"), &runs[0]).unwrap();
    let a = polysparse(&["sparsify", "--method", "field", "--in", "nae.pcsp"], p);
    let b = polysparse(&["sparsify", "--method", "field", "--in", "nae.pcsp"], p);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_sat_needs_allowed() {
    let dir = workspace();
    let p = dir.path();
    assert_eq!(code(&polysparse(&["encode", "--scheme", "gen-sat", "--in", "f.cnf"], p)), 2);
    let o = polysparse(&["encode", "--scheme", "gen-sat", "--allowed", "1,3", "--mod", "5", "--in", "f.cnf"], p);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let inst = parse_pcsp(&stdout(&o)).unwrap();
    assert_eq!(inst.degree_bound(), 2);
    assert_eq!(inst.len(), 6);
}

#[test]
fn generators() {
    let dir = workspace();
    let p = dir.path();
    fs::write(p.join("a.rbds"), "rbds 2 2 1\ne r1 b1\ne r1 b2\n").unwrap();
    fs::write(p.join("b.rbds"), "rbds 2 2 1\ne r2 b1\n").unwrap();

    let o = polysparse(&["generate", "--construction", "or-poly", "--p", "3", "--d", "2"], p);
    assert_eq!(code(&o), 0);
    let inst = parse_pcsp(&stdout(&o)).unwrap();
    assert_eq!((inst.n_vars(), inst.len()), (4, 1));

    let o = polysparse(&["generate", "--construction", "primesat", "--in", "f.cnf"], p);
    assert_eq!(code(&o), 2, "mixed clause lengths are rejected");
    fs::write(p.join("g.cnf"), "p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n").unwrap();
    let o = polysparse(&["generate", "--construction", "primesat", "--in", "g.cnf"], p);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("c primesat 3 2 3\n"), "{text}");
    assert_eq!(parse_dimacs(&text).unwrap().n_vars(), 9);

    let o = polysparse(&["generate", "--construction", "tree-gadget", "--n", "5", "--mod", "4"], p);
    assert_eq!(code(&o), 0);
    assert_eq!(parse_pcsp(&stdout(&o)).unwrap().ring().modulus(), Some(4));
    let o = polysparse(&["generate", "--construction", "tree-gadget", "--n", "5", "--mod", "2"], p);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&polysparse(&["generate", "--construction", "tree-gadget", "--n", "5"], p)), 2);

    let o = polysparse(
        &[
            "generate", "--construction", "erbds-cross", "--rbds", "a.rbds", "--rbds", "b.rbds",
            "--graph", "g.txt", "--out", "g.pcsp",
        ],
        p,
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let graph = fs::read_to_string(p.join("g.txt")).unwrap();
    assert!(graph.starts_with("c erbds t 4 k 1 mR 2 mB 2\n"), "{graph}");
    assert!(graph.contains(" exempt\n"));
    let csp = parse_pcsp(&fs::read_to_string(p.join("g.pcsp")).unwrap()).unwrap();
    assert_eq!(csp.n_vars(), graph.lines().filter(|l| l.starts_with("red ")).count());

    let o = polysparse(
        &["generate", "--construction", "degree-comp", "--rbds", "a.rbds", "--rbds", "b.rbds", "--mod", "5"],
        p,
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let inst = parse_pcsp(&stdout(&o)).unwrap();
    assert_eq!(inst.degree_bound(), 2);
    let o = polysparse(
        &["generate", "--construction", "degree-comp", "--rbds", "a.rbds", "--rbds", "b.rbds", "--per-group", "3"],
        p,
    );
    assert_eq!(code(&o), 2);
}
