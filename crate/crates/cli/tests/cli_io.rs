//! End-to-end command tests: piping, file formats, and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coverwalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("command runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("command spawns");
    child.stdin.as_mut().unwrap().write_all(input).unwrap();
    child.wait_with_output().expect("command finishes")
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "coverwalk-test-{}-{:x}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gen_pipes_into_walk() {
    let gen = run(&["gen", "cycle", "--m", "8"]);
    assert!(gen.status.success());
    let walk = run_with_stdin(&["walk", "--t", "1", "--initial", "vertex:0"], &gen.stdout);
    assert!(walk.status.success(), "{}", String::from_utf8_lossy(&walk.stderr));
    let csv = String::from_utf8(walk.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("vertex,probability"));
    let probs: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(probs.len(), 8);
    let total: f64 = probs.iter().sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn gen_cayley_dihedral_with_symbolic_generators() {
    let out = run(&["gen", "cayley", "--group", "dihedral:7", "--gens", "s,sinv,t"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let g = coverwalk::WeightedGraph::from_json_str(
        std::str::from_utf8(&out.stdout).unwrap(),
    )
    .unwrap();
    assert_eq!(g.num_vertices(), 14);
    let (regular, d) = g.is_regular();
    assert!(regular);
    assert_eq!(d, 3.0);
}

#[test]
fn cover_verify_quotient_walkcheck_round_trip() {
    let dir = tempdir();
    let y_path = dir.join("y.json");
    let pi_path = dir.join("pi.json");
    let x_path = dir.join("x.json");

    // Q_3 and its Hamming projection, through files.
    let status = bin()
        .args(["gen", "hypercube", "--n", "3", "--out"])
        .arg(&y_path)
        .status()
        .unwrap();
    assert!(status.success());
    let status = bin()
        .args(["gen", "path-quotient", "--n", "3", "--out"])
        .arg(dir.join("path.json"))
        .arg("--pi-out")
        .arg(&pi_path)
        .status()
        .unwrap();
    assert!(status.success());

    // Quotient emits the weighted path.
    let status = bin()
        .args(["cover", "quotient", "--Y"])
        .arg(&y_path)
        .arg("--pi")
        .arg(&pi_path)
        .arg("--out")
        .arg(&x_path)
        .status()
        .unwrap();
    assert!(status.success());
    let quotient = coverwalk::WeightedGraph::from_json_str(
        &std::fs::read_to_string(&x_path).unwrap(),
    )
    .unwrap();
    let expected =
        coverwalk::WeightedGraph::from_json_str(&std::fs::read_to_string(dir.join("path.json")).unwrap())
            .unwrap();
    assert_eq!(quotient.num_vertices(), expected.num_vertices());
    for u in 0..4 {
        for v in 0..4 {
            assert!((quotient.weight(u, v) - expected.weight(u, v)).abs() < 1e-12);
        }
    }

    // Verify agrees and exits 0.
    let out = bin()
        .args(["cover", "verify", "--Y"])
        .arg(&y_path)
        .arg("--X")
        .arg(&x_path)
        .arg("--pi")
        .arg(&pi_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report["is_cover"], true);
    assert_eq!(report["schema"], 1);

    // Walkcheck passes at the default tolerance.
    let status = bin()
        .args(["cover", "walkcheck", "--Y"])
        .arg(&y_path)
        .arg("--pi")
        .arg(&pi_path)
        .args(["--t", "1.0", "--states", "3"])
        .status()
        .unwrap();
    assert!(status.success());

    // A non-cover projection exits 1.
    let bad_pi = dir.join("bad_pi.json");
    std::fs::write(&bad_pi, "[0, 0, 1, 1, 2, 2, 3, 3]").unwrap();
    let out = bin()
        .args(["cover", "verify", "--Y"])
        .arg(&y_path)
        .arg("--X")
        .arg(&x_path)
        .arg("--pi")
        .arg(&bad_pi)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compile_emits_and_verifies() {
    let dir = tempdir();
    let gates_path = dir.join("gates.json");
    let out = bin()
        .args(["compile", "cycle", "--n", "5", "--t", "2", "--bits", "32", "--verify", "--emit"])
        .arg(&gates_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&gates_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["width"], 5);
    assert_eq!(parsed["gates"].as_array().unwrap().len(), 2 * (5 + 10 + 2) + 1);

    // An absurdly tight tolerance flips the exit code to 1.
    let out = run(&[
        "compile", "cycle", "--n", "3", "--t", "1", "--bits", "8", "--verify", "--tol", "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Torus verification within its widened bound.
    let out = run(&["compile", "torus", "--m", "2", "--n", "2", "--t", "1", "--bits", "32", "--verify"]);
    assert!(out.status.success());

    // Circulant from a generated Paley graph is not a power of two: usage error.
    let paley = run(&["gen", "paley", "--q", "13"]);
    let paley_path = dir.join("paley.json");
    std::fs::write(&paley_path, &paley.stdout).unwrap();
    let out = bin()
        .args(["compile", "circulant", "--graph"])
        .arg(&paley_path)
        .args(["--t", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dense propagator fallback"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hiddencover_solve_writes_stats() {
    let dir = tempdir();
    let stats_path = dir.join("stats.json");
    let out = bin()
        .args(["hiddencover", "solve", "--n", "391", "--bits", "32", "--seed", "7", "--trials", "20", "--out"])
        .arg(&stats_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stats: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats_path).unwrap()).unwrap();
    assert_eq!(stats["schema"], 1);
    assert_eq!(stats["n"], 391);
    assert_eq!(stats["summary"]["wrong"], 0);
    assert_eq!(stats["summary"]["failed"], 0);
    assert_eq!(stats["results"].as_array().unwrap().len(), 20);
    // 391 = 17 · 23, so every hidden period is one of the two.
    for entry in stats["results"].as_array().unwrap() {
        let hidden = entry["hidden_p"].as_u64().unwrap();
        assert!(hidden == 17 || hidden == 23);
        assert_eq!(entry["recovered"].as_u64().unwrap(), hidden);
    }
    std::fs::remove_dir_all(&dir).ok();

    // Prime n is a usage error.
    let out = run(&["hiddencover", "solve", "--n", "13", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hiddencover_dihedral_emits_csv() {
    let out = run(&["hiddencover", "dihedral", "--n", "5"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("subgroup,index,eigenvalue"));
    // 5 subgroups × 5 eigenvalues.
    assert_eq!(lines.count(), 25);
    assert!(String::from_utf8_lossy(&out.stderr).contains("indistinguishable"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["walk", "--t", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "cycle", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    // --help works on every level.
    for args in [vec!["--help"], vec!["gen", "--help"], vec!["demo", "--help"]] {
        let out = run(&args);
        assert!(out.status.success());
    }
}

#[test]
fn identical_seeds_give_identical_outputs() {
    let a = run(&["hiddencover", "solve", "--n", "35", "--seed", "3", "--trials", "10"]);
    let b = run(&["hiddencover", "solve", "--n", "35", "--seed", "3", "--trials", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["hiddencover", "solve", "--n", "35", "--seed", "4", "--trials", "10"]);
    assert_ne!(a.stdout, c.stdout, "different seeds should reshuffle trials");
}
