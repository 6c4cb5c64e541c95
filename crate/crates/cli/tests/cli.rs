use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pbody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbody"))
        .args(args)
        .env_remove("PBODY_SEED")
        .output()
        .expect("run pbody")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in\n{out}"))
        .to_string()
}

fn write_polygon(dir: &TempDir, name: &str, pts: &[[f64; 2]]) -> PathBuf {
    let path = dir.path().join(name);
    let body: Vec<String> = pts.iter().map(|[x, y]| format!("[{x}, {y}]")).collect();
    std::fs::write(&path, format!(r#"{{"vertices": [{}]}}"#, body.join(", "))).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const KMAX: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
const SQUARE: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
const PENTAGON: [[f64; 2]; 5] = [
    [1.0, 0.0],
    [0.3, 0.95],
    [-0.8, 0.6],
    [-0.8, -0.6],
    [0.3, -0.95],
];

#[test]
fn constant_values() {
    for (p, want) in [("1", 6.0), ("inf", 4.0), ("2", 2.0 + std::f64::consts::PI)] {
        let o = pbody(&["constant", "--p", p]);
        assert_eq!(code(&o), 0);
        let v: f64 = field(&stdout(&o), "c2p").parse().unwrap();
        assert!((v - want).abs() <= 1e-10, "p={p}: {v}");
    }
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(code(&pbody(&["constant", "--p", "abc"])), 1);
    assert_eq!(code(&pbody(&["constant", "--p", "0.5"])), 1);
    assert_eq!(code(&pbody(&["nonsense"])), 1);
    assert_eq!(
        code(&pbody(&[
            "fp",
            "--input",
            "/nonexistent/k.json",
            "--p",
            "2"
        ])),
        1
    );
    assert_eq!(code(&pbody(&["--help"])), 0);
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [[0, 0], [1]]}").unwrap();
    assert_eq!(code(&pbody(&["fp", "--input", s(&path), "--p", "2"])), 1);
}

#[test]
fn fp_on_extremal_triangle_and_square() {
    let dir = tempfile::tempdir().unwrap();
    let k = write_polygon(&dir, "k.json", &KMAX);
    let out = stdout(&pbody(&["fp", "--input", s(&k), "--p", "1"]));
    assert_eq!(field(&out, "fp"), "6");
    let sq = write_polygon(&dir, "sq.json", &SQUARE);
    let o = pbody(&["fp", "--input", s(&sq), "--p", "2"]);
    assert_eq!(code(&o), 0);
    let v: f64 = field(&stdout(&o), "fp").parse().unwrap();
    assert!((v - 2.0).abs() < 1e-8);
    assert_eq!(field(&stdout(&o), "converged"), "true");
}

#[test]
fn origin_outside_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let off = write_polygon(&dir, "off.json", &[[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]]);
    assert_eq!(code(&pbody(&["fp", "--input", s(&off), "--p", "2"])), 4);
    assert_eq!(code(&pbody(&["reduce", "--input", s(&off), "--p", "2"])), 4);
    assert_eq!(code(&pbody(&["verify", "--input", s(&off)])), 4);
}

fn shear_count(out: &str) -> usize {
    out.lines().filter(|l| l.contains(",shear,")).count()
}

#[test]
fn reduce_traces() {
    let dir = tempfile::tempdir().unwrap();
    let k = write_polygon(&dir, "k.json", &KMAX);
    let out = stdout(&pbody(&["reduce", "--input", s(&k), "--p", "2"]));
    assert_eq!(shear_count(&out), 0);
    assert!(out.lines().any(|l| l.starts_with("final_triangle")));

    let sq = write_polygon(&dir, "sq.json", &SQUARE);
    let out = stdout(&pbody(&["reduce", "--input", s(&sq), "--p", "inf"]));
    assert_eq!(shear_count(&out), 1);

    let pent = write_polygon(&dir, "pent.json", &PENTAGON);
    let o = pbody(&["reduce", "--input", s(&pent), "--p", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(shear_count(&out), 2);
    let f: f64 = field(&out, "fp_final").parse().unwrap();
    assert!((f - (2.0 + std::f64::consts::PI)).abs() < 1e-5, "{f}");
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = pbody(&[
        "sweep",
        "--p-min",
        "1",
        "--p-max",
        "3",
        "--steps",
        "3",
        "--out",
        s(&path),
    ]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("1,6.0000000000000000e0,"));
    assert!(rows[3].starts_with("3,"));
}

#[test]
fn render_is_deterministic_and_reports_io_errors() {
    let a = stdout(&pbody(&["render"]));
    let b = stdout(&pbody(&["render"]));
    assert_eq!(a, b);
    assert_eq!(a.matches("<path").count(), 5);
    assert_eq!(
        code(&pbody(&["render", "--out", "/nonexistent/dir/f.svg"])),
        1
    );
}

#[test]
fn verify_small_run_and_seed_env() {
    let a = pbody(&["verify", "--count", "5"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert!(stdout(&a).starts_with("seed = 42, bodies = 5"));
    let b = Command::new(env!("CARGO_BIN_EXE_pbody"))
        .args(["verify", "--count", "5"])
        .env("PBODY_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), stdout(&b));
    let c = Command::new(env!("CARGO_BIN_EXE_pbody"))
        .args(["verify", "--count", "5"])
        .env("PBODY_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&c).starts_with("seed = 7"));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn verify_single_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write_polygon(&dir, "sq.json", &SQUARE);
    let o = pbody(&["verify", "--input", s(&sq), "--p", "1,1.5,2,inf"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("bodies = 1"));
}
