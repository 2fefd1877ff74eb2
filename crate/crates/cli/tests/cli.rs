use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phasetorus"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn reduce_figure_instance() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "# figure\n0\n4\n9\n");
    let o = run(&["reduce", "--spectrum", p(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("N = 36"), "{s}");
    assert!(s.contains("p = (0, 4, 9)"));
    assert!(s.contains("delta_t = 1/36 turns"));
}

#[test]
fn reduce_one_level() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "one.txt", "7\n");
    let o = run(&["reduce", "--spectrum", p(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N = 1"));
}

#[test]
fn reduce_incommensurable() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "irr.txt", "0\n1\n1.4142135623730951\n");
    let o = run(&["reduce", "--spectrum", p(&spec), "--tol", "1e-15", "--max-den", "1000000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("INCOMMENSURABLE"));
}

#[test]
fn float_spectrum_rationalized() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "f.txt", "0.0\n4.0\n9.0\n");
    let o = run(&["reduce", "--spectrum", p(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N = 36"));
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let degenerate = write(&dir, "deg.txt", "0\n1\n1\n");
    assert_eq!(run(&["reduce", "--spectrum", p(&degenerate)]).status.code(), Some(1));
    let garbage = write(&dir, "bad.txt", "0\nhello\n");
    assert_eq!(run(&["reduce", "--spectrum", p(&garbage)]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "--spectrum", "/nonexistent/file"]).status.code(), Some(1));
    let ok = write(&dir, "ok.txt", "0\n1\n");
    assert_eq!(run(&["reduce", "--spectrum", p(&ok), "--precision", "32"]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "--spectrum", p(&ok), "--tol", "0"]).status.code(), Some(1));
}

#[test]
fn torus_csv_rows() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "0\n4\n9\n");
    let o = run(&["torus", "--spectrum", p(&spec), "--format", "csv", "--from", "0", "--count", "36"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 37);
    assert!(lines[2].starts_with("1,1/9,1/4,"), "{}", lines[2]);

    let single = run(&["torus", "--spectrum", p(&spec), "--count", "1"]);
    let s = stdout(&single);
    assert_eq!(s.lines().count(), 2);
    assert!(s.lines().nth(1).unwrap().starts_with("0,0,0,"));
}

#[test]
fn torus_outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "0\n4\n9\n");
    for format in ["csv", "svg"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for out in [&a, &b] {
            let o = run(&["torus", "--spectrum", p(&spec), "--format", format, "--out", p(out)]);
            assert_eq!(o.status.code(), Some(0));
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
    let svg = fs::read_to_string(dir.path().join("a.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 36);
}

#[test]
fn torus_svg_needs_three_levels() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "four.txt", "0\n1\n2\n5\n");
    let o = run(&["torus", "--spectrum", p(&spec), "--format", "svg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn period_and_cap() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "0\n4\n9\n");
    let o = run(&["period", "--spectrum", p(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("minimal period = 36"));
    assert!(s.contains("distinct states (strict) = 36"));
    assert!(s.contains("recurrence = verified by scan"));

    let o = run(&["period", "--spectrum", p(&spec), "--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("recurrence at period = true"));

    let sparse = write(&dir, "sparse.txt", "amps:\n1\n0\n1\n");
    let o = run(&["period", "--spectrum", p(&spec), "--state", p(&sparse)]);
    assert!(stdout(&o).contains("minimal period = 4"));
}

#[test]
fn evolve_prints_lattice_phases() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "0\n4\n9\n");
    let state = write(&dir, "s.txt", "amps:\n1/2\n1/3\n1/6\nstep: 0\n");
    let o = run(&["evolve", "--spectrum", p(&spec), "--state", p(&state), "--steps", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("norm_sq = 14"));
    assert!(s.contains("k = 1: amp = 2, phase = 0/36 turns, P = 2/7"), "{s}");
    assert!(s.contains("k = 2: amp = 1, phase = 9/36 turns, P = 1/14"));
    let back = run(&["evolve", "--spectrum", p(&spec), "--state", p(&state), "--steps", "-1"]);
    assert!(stdout(&back).contains("k = 1: amp = 2, phase = 32/36 turns"));
}

#[test]
fn born_exact_and_interval() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "two.txt", "0\n1\n2\n");
    let psi = write(&dir, "psi.txt", "amps:\n1\n1\n1\nstep: 1\n");
    let a = write(&dir, "a.txt", "amps:\n1\n-1\n1\n");
    let o = run(&["born", "--spectrum", p(&spec), "--state", p(&psi), "--analysis", p(&a)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P = 1 (exact)"), "{}", stdout(&o));

    let fig = write(&dir, "fig1.txt", "0\n4\n9\n");
    let psi = write(&dir, "psi3.txt", "amps:\n1\n2\n3\nstep: 1\n");
    let a = write(&dir, "a3.txt", "amps:\n2\n-1\n1\n");
    let o = run(&["born", "--spectrum", p(&fig), "--state", p(&psi), "--analysis", p(&a)]);
    assert!(stdout(&o).contains(" ± "));

    let o = run(&["born", "--spectrum", p(&fig), "--state", p(&psi)]);
    let s = stdout(&o);
    assert!(s.contains("P(0) = 1/14") && s.contains("P(2) = 9/14"));
}

#[test]
fn fidelity_report() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "fig1.txt", "0\n4\n9\n");
    let o = run(&["fidelity", "--spectrum", p(&spec), "--count", "36"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let value: f64 = s
        .lines()
        .find_map(|l| l.strip_prefix("max (1 - fidelity) = "))
        .and_then(|l| l.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(value <= 1e-12);
}

#[test]
fn randspec_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("rand.txt");
    let o = run(&["randspec", "--dim", "5", "--bound", "40", "--seed", "9", "--out", p(&path)]);
    assert_eq!(o.status.code(), Some(0));
    let first = run(&["reduce", "--spectrum", p(&path)]);
    let again = run(&["randspec", "--dim", "5", "--bound", "40", "--seed", "9"]);
    assert_eq!(stdout(&again).as_bytes(), fs::read(&path).unwrap().as_slice());
    let text = fs::read_to_string(&path).unwrap();
    let energies: Vec<_> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| phasetorus::numkernel::parse_rational(l).unwrap())
        .collect();
    let direct = phasetorus::EnergySpectrum::new(energies).unwrap().reduce();
    assert!(stdout(&first).contains(&format!("N = {}", direct.modulus())));
}

#[test]
fn stats_reproducible() {
    let a = run(&["stats", "--dims", "2,3,4", "--bound", "50", "--trials", "40", "--seed", "7"]);
    let b = run(&["stats", "--dims", "2,3,4", "--bound", "50", "--trials", "40", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    assert!(s.contains("\n2,0.000000,0.000000,0.000000\n"), "{s}");
}
