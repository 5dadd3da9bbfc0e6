//! One pinned output per subcommand. Set `UPDATE_GOLDEN=1` to rewrite the
//! files under `tests/golden/` after an intentional format change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs");
}

/// Same shape as the golden file, numbers within `tol`. For outputs that
/// carry eigensolver round-off.
fn check_golden_numeric(name: &str, actual: &str, tol: f64) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        return check_golden(name, actual);
    }
    let expected = std::fs::read_to_string(golden_dir().join(name)).unwrap();
    let split = |s: &str| -> Vec<Vec<f64>> {
        s.lines()
            .map(|l| l.split([',', ' ']).map(|f| f.parse().unwrap()).collect())
            .collect()
    };
    let (a, e) = (split(actual), split(&expected));
    assert_eq!(a.len(), e.len(), "golden file {name}: line count");
    for (ra, re) in a.iter().zip(&e) {
        assert_eq!(ra.len(), re.len(), "golden file {name}: field count");
        for (x, y) in ra.iter().zip(re) {
            assert!((x - y).abs() <= tol, "golden file {name}: {x} vs {y}");
        }
    }
}

fn hcc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcc"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = hcc(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(dir: &Path, args: &[&str]) -> String {
    let out = hcc(dir, args);
    assert!(!out.status.success(), "{args:?} should fail");
    assert!(out.stdout.is_empty());
    String::from_utf8(out.stderr).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("s.csv"), "0,0.9,-0.2\n0.9,0,0.3\n-0.2,0.3,0\n").unwrap();
    dir
}

#[test]
fn cluster_hcc_fixture() {
    let dir = setup();
    ok(
        dir.path(),
        &["cluster", "s.csv", "--criterion", "hcc", "--k", "2", "--out", "d.txt"],
    );
    check_golden("cluster_hcc.dendrogram", &read(dir.path(), "d.txt"));
    assert_eq!(read(dir.path(), "d.txt.labels"), "0\n0\n1\n");
}

#[test]
fn cluster_with_k_equal_n_gives_identity_labels() {
    let dir = setup();
    ok(
        dir.path(),
        &[
            "cluster",
            "s.csv",
            "--criterion",
            "average",
            "--k",
            "3",
            "--out",
            "d.txt",
            "--labels-out",
            "l.txt",
        ],
    );
    assert_eq!(read(dir.path(), "l.txt"), "0\n1\n2\n");
}

#[test]
fn cluster_reports_the_malformed_line() {
    let dir = setup();
    std::fs::write(dir.path().join("bad.csv"), "0,1,2\n1,0\n2,1,0\n").unwrap();
    let err = fails(dir.path(), &["cluster", "bad.csv", "--out", "d.txt"]);
    assert!(err.contains("line 2"), "{err}");
    let err = fails(dir.path(), &["cluster", "missing.csv", "--out", "d.txt"]);
    assert!(err.contains("missing.csv"), "{err}");
}

#[test]
fn embed_two_point_dendrogram() {
    let dir = setup();
    std::fs::write(dir.path().join("two.txt"), "0,1,5.0000000000000000e-1,2,1\n").unwrap();
    let stdout = ok(
        dir.path(),
        &[
            "embed",
            "two.txt",
            "--dendrogram",
            "--level",
            "linkage",
            "--out",
            "e.txt",
        ],
    );
    assert!(stdout.starts_with("reconstruction_error,"));
    let e = read(dir.path(), "e.txt");
    assert!(e.starts_with("2 1\n"), "{e}");
    check_golden_numeric("embed_two_point.embedding", &e, 1e-12);
}

#[test]
fn embed_fixture_reports_small_error() {
    let dir = setup();
    let stdout = ok(
        dir.path(),
        &[
            "embed",
            "s.csv",
            "--criterion",
            "hcc",
            "--level",
            "level",
            "--out",
            "e.txt",
        ],
    );
    let err: f64 = stdout.trim().split(',').nth(1).unwrap().parse().unwrap();
    assert!(err <= 1e-6);
    check_golden_numeric("embed_fixture.embedding", &read(dir.path(), "e.txt"), 1e-12);
}

#[test]
fn embed_refuses_linkage_levels_for_hcc() {
    let dir = setup();
    let err = fails(
        dir.path(),
        &[
            "embed",
            "s.csv",
            "--criterion",
            "hcc",
            "--level",
            "linkage",
            "--out",
            "e.txt",
        ],
    );
    assert!(err.contains("level function"), "{err}");
    ok(dir.path(), &["cluster", "s.csv", "--out", "d.txt"]);
    fails(
        dir.path(),
        &[
            "embed",
            "d.txt",
            "--dendrogram",
            "--criterion",
            "hcc",
            "--level",
            "linkage",
            "--out",
            "e.txt",
        ],
    );
}

#[test]
fn minimax_cc_blocks() {
    let dir = setup();
    let block = |i: usize, j: usize| if (i < 3) == (j < 3) { 0.5 } else { -0.5 };
    let text: String = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    if i == j {
                        "0".to_string()
                    } else {
                        block(i, j).to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect();
    std::fs::write(dir.path().join("b.csv"), text).unwrap();
    ok(dir.path(), &["minimax-cc", "b.csv", "--out", "l.txt"]);
    check_golden("minimax_blocks.labels", &read(dir.path(), "l.txt"));
    assert_eq!(read(dir.path(), "l.txt"), "0\n0\n0\n1\n1\n");

    std::fs::write(dir.path().join("neg.csv"), "0,-1,-1\n-1,0,-1\n-1,-1,0\n").unwrap();
    ok(dir.path(), &["minimax-cc", "neg.csv", "--out", "l.txt"]);
    assert_eq!(read(dir.path(), "l.txt"), "0\n1\n2\n");
    std::fs::write(dir.path().join("pos.csv"), "0,1,1\n1,0,1\n1,1,0\n").unwrap();
    ok(dir.path(), &["minimax-cc", "pos.csv", "--out", "l.txt"]);
    assert_eq!(read(dir.path(), "l.txt"), "0\n0\n0\n");
}

#[test]
fn eval_prints_measure_rows() {
    let dir = setup();
    std::fs::write(dir.path().join("t.txt"), "0\n0\n1\n1\n2\n2\n").unwrap();
    std::fs::write(dir.path().join("p.txt"), "0\n0\n1\n2\n2\n2\n").unwrap();
    check_golden("eval.csv", &ok(dir.path(), &["eval", "t.txt", "p.txt"]));
    let same = ok(dir.path(), &["eval", "t.txt", "t.txt", "--measures", "ari"]);
    assert_eq!(same, "measure,value\nari,1\n");
    std::fs::write(dir.path().join("short.txt"), "0\n1\n").unwrap();
    fails(dir.path(), &["eval", "t.txt", "short.txt"]);
}

#[test]
fn synth_matrix_and_labels() {
    let dir = setup();
    ok(
        dir.path(),
        &[
            "synth", "--n", "6", "--k", "2", "--eta", "0.1", "--seed", "42", "--out", "m.csv",
        ],
    );
    check_golden("synth_n6_k2.csv", &read(dir.path(), "m.csv"));
    check_golden("synth_n6_k2.labels", &read(dir.path(), "m.csv.labels"));
    fails(dir.path(), &["synth", "--n", "6", "--k", "7", "--out", "m.csv"]);
    fails(
        dir.path(),
        &["synth", "--n", "6", "--k", "2", "--eta", "1.5", "--out", "m.csv"],
    );
}

const SMALL: &str = "# small sweep\nn = 24\nk = 3\neta = 0, 0.2\nreps = 3\nseed = 5\ncriteria = hcc, average\nmeasures = ami, ari\nout = r.csv\n";

#[test]
fn experiment_outputs() {
    let dir = setup();
    std::fs::write(dir.path().join("cfg.txt"), SMALL).unwrap();
    ok(dir.path(), &["experiment", "cfg.txt"]);
    let runs = read(dir.path(), "r.csv");
    assert_eq!(runs.lines().count(), 1 + 2 * 2 * 3 * 2);
    check_golden("experiment_small.csv", &runs);
    check_golden("experiment_small.summary.csv", &read(dir.path(), "r.summary.csv"));
}

#[test]
fn experiment_noiseless_hcc_recovers_the_partition() {
    let dir = setup();
    std::fs::write(
        dir.path().join("cfg.txt"),
        "n = 30\nk = 3\neta = 0\nreps = 1\ncriteria = hcc\nmeasures = ami\nout = r.csv\n",
    )
    .unwrap();
    ok(dir.path(), &["experiment", "cfg.txt"]);
    assert_eq!(
        read(dir.path(), "r.csv"),
        "criterion,eta,repetition,measure,value\nhcc,0,0,ami,1\n"
    );
    assert_eq!(
        read(dir.path(), "r.summary.csv"),
        "criterion,eta,measure,mean,stddev\nhcc,0,ami,1,0\n"
    );
}

#[test]
fn experiment_config_errors() {
    let dir = setup();
    std::fs::write(dir.path().join("cfg.txt"), "n = 30\nk = 3\neta =\nout = r.csv\n").unwrap();
    let err = fails(dir.path(), &["experiment", "cfg.txt"]);
    assert!(err.contains("eta"), "{err}");
    std::fs::write(dir.path().join("cfg.txt"), SMALL).unwrap();
    fails(dir.path(), &["experiment", "cfg.txt", "--reps", "0"]);
    ok(
        dir.path(),
        &["experiment", "cfg.txt", "--reps", "1", "--out", "other.csv"],
    );
    assert_eq!(read(dir.path(), "other.csv").lines().count(), 1 + 2 * 2 * 2);
}
