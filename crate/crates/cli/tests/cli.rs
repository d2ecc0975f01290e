//! End-to-end runs of the `tightspan` binary.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn tightspan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightspan"))
        .args(args)
        .current_dir(dir)
        .env("TIGHTSPAN_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn check_golden(dir: &Path, args: &[&str], name: &str, code: i32) {
    let o = tightspan(dir, args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden(name), "{args:?}");
}

#[test]
fn fig1_pipeline_reports_two_components() {
    let dir = TempDir::new().unwrap();
    let o = tightspan(dir.path(), &["gen", "fig1", "--n", "100", "-o", "g.hg"]);
    assert!(o.status.success());
    assert!(dir.path().join("g.hg.meta.json").exists());
    let o = tightspan(dir.path(), &["components", "g.hg"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("components=2\n"));
    assert!(text.contains("spanning=false\n"));
}

#[test]
fn fixture_pipeline_classifies_torus() {
    let dir = TempDir::new().unwrap();
    let o = tightspan(dir.path(), &["gen", "fixture", "--name", "T9", "-o", "t9.surf", "--host", "t9.blow"]);
    assert!(o.status.success());
    let o = tightspan(dir.path(), &["classify", "t9.surf", "--expect", "torus", "--host", "t9.blow"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("kind=orientable\ngenus=1\nchi=0\nv=9\ne=27\nf=18\n"));
    assert!(text.contains("spanning=true"));
    let o = tightspan(dir.path(), &["classify", "t9.surf", "--expect", "sphere"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn non_surface_classifies_with_exit_one() {
    let dir = TempDir::new().unwrap();
    tightspan(dir.path(), &["gen", "fig1", "--n", "10", "-o", "f.hg"]);
    let o = tightspan(dir.path(), &["classify", "f.hg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("kind=notAClosedSurface\n"));
}

#[test]
fn golden_json_reports() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    tightspan(p, &["gen", "fig1", "--n", "12", "-o", "f12.hg"]);
    check_golden(p, &["--json", "components", "f12.hg"], "components_fig1_12.json", 0);
    tightspan(p, &["gen", "fixture", "--name", "T9", "-o", "t9.surf"]);
    check_golden(p, &["--json", "classify", "t9.surf"], "classify_t9.json", 0);
    tightspan(p, &["gen", "kpartite", "--k", "3", "--sizes", "1,2,2", "-o", "k.hg"]);
    check_golden(p, &["--json", "search", "sphere", "k.hg"], "search_k122.json", 1);
    check_golden(p, &["--json", "audit", "theorem", "--n", "5"], "audit_theorem_5.json", 0);
    check_golden(
        p,
        &["--json", "audit", "theorem", "--n", "7", "--samples", "2000", "--seed", "7"],
        "audit_sample_7.json",
        0,
    );
    check_golden(p, &["--json", "audit", "threshold", "--n", "5"], "threshold_5.json", 0);
    check_golden(p, &["--json", "build-sphere", "--n", "20"], "build_sphere_20.json", 0);
    tightspan(p, &["gen", "cycle", "--k", "3", "--n", "7", "-o", "c.hg"]);
    check_golden(p, &["--json", "check-framework", "c.hg"], "framework_cycle_7.json", 0);
    check_golden(p, &["gen", "fixture", "--name", "P12"], "p12.surf", 0);
}

#[test]
fn outputs_do_not_depend_on_threads() {
    let dir = TempDir::new().unwrap();
    let args = |t: &'static str| ["--json", "--threads", t, "audit", "theorem", "--n", "8", "--samples", "150000", "--seed", "3"];
    let one = tightspan(dir.path(), &args("1"));
    let four = tightspan(dir.path(), &args("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(tightspan(p, &["components"]).status.code(), Some(2));
    assert_eq!(tightspan(p, &["components", "x.hg", "--colour"]).status.code(), Some(2));
    assert_eq!(tightspan(p, &["components", "missing.hg"]).status.code(), Some(3));
    std::fs::write(p.join("bad.hg"), "3 5\n0 1 2\n\n# comment\n0 1 7\n").unwrap();
    let o = tightspan(p, &["components", "bad.hg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5:"));
    assert_eq!(tightspan(p, &["gen", "fig1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(tightspan(p, &["audit", "theorem", "--n", "9"]).status.code(), Some(3));
    tightspan(p, &["gen", "fixture", "--name", "T9", "-o", "t9.surf"]);
    let o = tightspan(p, &["search", "sphere", "t9.surf", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("outcome=budget-exhausted"));
    assert_eq!(tightspan(p, &["--help"]).status.code(), Some(0));
}

#[test]
fn search_finds_and_writes_a_sphere() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    tightspan(p, &["gen", "kpartite", "--k", "3", "--sizes", "2,3,3", "-o", "k.hg"]);
    let o = tightspan(p, &["search", "sphere", "k.hg", "-o", "s.surf"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tightspan(p, &["classify", "s.surf", "--expect", "sphere"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn built_surfaces_are_rereadable() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let o = tightspan(p, &["build-surface", "--kind", "nonorientable", "--genus", "2", "--n", "60", "-o", "k.surf", "--host", "k.blow"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = tightspan(p, &["classify", "k.surf", "--expect", "nonorientable:2", "--host", "k.blow"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max_cluster="));
    let o = tightspan(p, &["build-surface", "--kind", "sphere", "--genus", "1", "--n", "30"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tightspan(p, &["build-surface", "--kind", "orientable", "--genus", "1", "--n", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn framework_by_component_and_consistency() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    tightspan(p, &["gen", "cycle", "--k", "3", "--n", "6", "-o", "c6.hg"]);
    let o = tightspan(p, &["check-framework", "c6.hg", "--component-index", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("f3=false"));
    tightspan(p, &["gen", "path", "--k", "3", "--l", "4", "--sizes", "3,3,3,3", "-o", "b.hg"]);
    let o = tightspan(p, &["check-framework", "b.hg", "--consistency", "0,11"]);
    assert!(stdout(&o).contains("f4=true"));
    assert_eq!(tightspan(p, &["check-framework", "c6.hg", "--component-index", "5"]).status.code(), Some(2));
}

#[test]
fn config_file_defaults_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    std::fs::write(p.join("cfg.toml"), "seed = 7\njson = true\n").unwrap();
    let o = tightspan(p, &["--config", "cfg.toml", "audit", "theorem", "--n", "7", "--samples", "2000"]);
    assert_eq!(stdout(&o), golden("audit_sample_7.json"));
    let o = tightspan(p, &["--config", "cfg.toml", "audit", "theorem", "--n", "7", "--samples", "2000", "--seed", "8"]);
    assert!(stdout(&o).contains("\"seed\": 8"));
    std::fs::write(p.join("bad.toml"), "colour = 1\n").unwrap();
    assert_eq!(tightspan(p, &["--config", "bad.toml", "audit", "threshold", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn identical_commands_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    for name in ["a.hg", "b.hg"] {
        tightspan(p, &["gen", "surface-lb", "--n", "30", "-o", name]);
    }
    assert_eq!(std::fs::read(p.join("a.hg")).unwrap(), std::fs::read(p.join("b.hg")).unwrap());
    let a = tightspan(p, &["audit", "codegree", "--n", "8", "--k", "3", "--samples", "200", "--seed", "5"]);
    let b = tightspan(p, &["audit", "codegree", "--n", "8", "--k", "3", "--samples", "200", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
}
