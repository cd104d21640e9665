use std::path::Path;
use std::process::Command;

use hyperlam::instance::Instance;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperlam"))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = dir.join(name);
    let st = bin().arg("generate").args(args).arg("--output").arg(&out).status().unwrap();
    assert!(st.success());
    out
}

fn run(args: &[&str], input: &Path) -> (i32, String) {
    let o = bin().arg("run").args(args).arg("--input").arg(input).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn covering_pipeline_passes() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen(dir.path(), "b.json", &["block_filtration", "--radius", "8", "--steps", "1,2,3"]);
    let svg = dir.path().join("c.svg");
    let o = bin().args(["run", "covering", "--input"]).arg(&input).arg("--svg").arg(&svg).output().unwrap();
    let report = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{report}");
    assert!(report.ends_with("status: pass\n"));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn zero_cap_is_vacuous_pass() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen(dir.path(), "b.json", &["block_filtration", "--radius", "4", "--steps", "1,2"]);
    let (code, report) = run(&["covering", "--qmax", "0"], &input);
    assert_eq!(code, 0);
    assert!(report.contains("vacuous: true"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0, 0.0]]").unwrap();
    for cmd in [vec!["run", "envelope"], vec!["verify"], vec!["render"]] {
        let o = bin().args(&cmd).arg("--input").arg(&bad).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{cmd:?}");
    }
    let missing = dir.path().join("none.json");
    assert_eq!(bin().args(["verify", "--input"]).arg(&missing).status().unwrap().code(), Some(2));
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen(dir.path(), "b.json", &["block_filtration", "--radius", "6", "--seed", "3"]);
    let a = run(&["strong"], &input);
    let b = run(&["strong"], &input);
    assert_eq!(a, b);
    let again = gen(dir.path(), "b2.json", &["block_filtration", "--radius", "6", "--seed", "3"]);
    assert_eq!(std::fs::read(&input).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn generated_instances_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["grid_window", "block_filtration", "linear_foliation_window", "suspension"] {
        let p = gen(dir.path(), &format!("{kind}.json"), &[kind, "--radius", "3"]);
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = Instance::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{kind}");
        let o = bin().args(["verify", "--input"]).arg(&p).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&o.stdout));
        let r = bin().args(["render", "--input"]).arg(&p).output().unwrap();
        assert!(r.status.success() && r.stdout.starts_with(b"<svg"), "{kind}");
    }
}

#[test]
fn suspension_and_dirichlet_pass() {
    let dir = tempfile::tempdir().unwrap();
    let s = gen(dir.path(), "s.json", &["suspension", "--radius", "4", "--size", "24", "--seed", "7"]);
    assert_eq!(run(&["suspension"], &s).0, 0);
    let g = gen(dir.path(), "g.json", &["grid_window", "--radius", "5"]);
    let (code, report) = run(&["dirichlet"], &g);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("max_principle: true"));
}

#[test]
fn bad_arguments_are_input_errors() {
    let o = bin().args(["generate", "block_filtration", "--steps", "3,2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["generate", "linear_foliation_window", "--alpha", "1/0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
