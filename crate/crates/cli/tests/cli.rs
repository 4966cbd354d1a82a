use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tailormap::PauliSum;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tailormap"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/fcidump")
        .join(format!("{name}.fcidump"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn jw_tree_table() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(dir.path(), &["tree", "jw", "-n", "3", "-o", "jw.txt"]);
    let rows: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows[2].ends_with("Z0X1"));
    assert!(rows[6].ends_with("Z0Z1Z2"));
    assert!(dir.path().join("jw.txt").exists());
}

#[test]
fn table_from_tree_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = "\
node 0 mode 0 parent - branch -
node 1 mode 1 parent 0 branch x
node 2 mode 2 parent 0 branch y
node 3 mode 3 parent 0 branch z
node 4 mode 4 parent 1 branch x
node 5 mode 5 parent 1 branch y
node 6 mode 6 parent 1 branch z
node 7 mode 7 parent 2 branch z
node 8 mode 8 parent 3 branch y
node 9 mode 9 parent 3 branch z
";
    std::fs::write(dir.path().join("t.txt"), text).unwrap();
    let stdout = ok(dir.path(), &["tree", "show", "t.txt"]);
    let strings: Vec<&str> = stdout.lines().map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(strings.len(), 21);
    assert_eq!(strings[0], "X0Z1Z6");
    assert_eq!(strings[7], "Z0Y3Z8");
    assert_eq!(strings[20], "Z0Z3Z9");
}

#[test]
fn transform_and_solve_h2() {
    let dir = tempfile::tempdir().unwrap();
    let fcidump = fixture("h2_631g");
    let f = fcidump.to_str().unwrap();
    ok(dir.path(), &["tree", "jw", "-n", "8", "-o", "jw.txt"]);
    ok(dir.path(), &["tree", "parity", "--order", "0,1,2,3,4,5,6,7", "-o", "p.txt"]);
    let jw = ok(dir.path(), &["transform", "--fcidump", f, "--tree", "jw.txt", "-o", "jw.json"]);
    let par = ok(dir.path(), &["transform", "--fcidump", f, "--tree", "p.txt", "-o", "p.json"]);
    assert!(jw.contains("terms: 185") && jw.contains("max weight: 8"));
    assert!(par.contains("terms:"));
    let h = PauliSum::from_json(&std::fs::read_to_string(dir.path().join("jw.json")).unwrap()).unwrap();
    assert!(h.is_hermitian(1e-12));

    let stdout = ok(
        dir.path(),
        &["analyze", "--hamiltonian", "p.json", "--tree", "p.txt", "--fcidump", f, "--reorder", "--out-dir", "res"],
    );
    let corr = stdout.lines().find(|l| l.starts_with("correlation energy")).unwrap();
    assert!(corr.contains("(15.495"), "{corr}");
    for file in ["mi.csv", "blocks.csv", "mi_reordered.csv", "blocks_reordered.csv", "permutation.txt"] {
        assert!(dir.path().join("res").join(file).exists(), "{file}");
    }
    let blocks = std::fs::read_to_string(dir.path().join("res/blocks.csv")).unwrap();
    assert_eq!(blocks.lines().count(), 8);
}

#[test]
fn product_hamiltonian_has_no_mutual_information() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"n_qubits":2,"terms":[{"string":"Z0","real":-1.0,"imag":0.0},{"string":"Z1","real":-0.5,"imag":0.0}]}"#;
    std::fs::write(dir.path().join("h.json"), json).unwrap();
    ok(dir.path(), &["solve", "--hamiltonian", "h.json"]);
    let mi = std::fs::read_to_string(dir.path().join("mi.csv")).unwrap();
    for line in mi.lines().skip(1) {
        for v in line.split(',').skip(1) {
            assert_eq!(v.parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn vqe_is_reproducible_and_variational() {
    let dir = tempfile::tempdir().unwrap();
    let fcidump = fixture("h2_631g");
    let f = fcidump.to_str().unwrap();
    ok(dir.path(), &["tree", "jw", "-n", "8", "-o", "jw.txt"]);
    ok(dir.path(), &["transform", "--fcidump", f, "--tree", "jw.txt", "-o", "h.json"]);
    let args = |out: &'static str| {
        vec![
            "--seed", "3", "vqe", "--hamiltonian", "h.json", "--tree", "jw.txt", "--fcidump", f, "--layers", "0-1",
            "--restarts", "2", "--iterations", "150", "-o", out,
        ]
    };
    ok(dir.path(), &args("a.csv"));
    ok(dir.path(), &args("b.csv"));
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[2].parse::<f64>().unwrap() >= -1e-6));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.conf"), "modes = 2\nout = from_config.txt\nrestarts = 4\n").unwrap();
    ok(dir.path(), &["--config", "run.conf", "tree", "jw"]);
    assert!(dir.path().join("from_config.txt").exists());
    let stdout = ok(dir.path(), &["--config", "run.conf", "tree", "jw", "-n", "3", "-o", "flag.txt"]);
    assert!(stdout.contains("(3 modes)"));
    assert!(dir.path().join("flag.txt").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(dir.path(), args).status.code().unwrap();
    assert_eq!(code(&["tree", "jw"]), 4);
    assert_eq!(code(&["tree", "parity", "--order", "0,0"]), 4);
    std::fs::write(dir.path().join("bad.fcidump"), "not an fcidump").unwrap();
    ok(dir.path(), &["tree", "jw", "-n", "2", "-o", "t.txt"]);
    assert_eq!(code(&["transform", "--fcidump", "bad.fcidump", "--tree", "t.txt"]), 2);
    std::fs::write(dir.path().join("bad.conf"), "no equals sign").unwrap();
    assert_eq!(code(&["--config", "bad.conf", "tree", "jw", "-n", "2"]), 2);
    assert_eq!(code(&["solve", "--hamiltonian", "missing.json"]), 5);
    assert_eq!(code(&["--help"]), 0);
}
