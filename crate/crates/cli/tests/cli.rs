use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cosetdyn"))
}

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(format!("{name}.spec"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_machine_report() {
    let o = bin()
        .args(["decompose", "--format", "machine", "--verify-depth", "6"])
        .arg(spec("sigma_a"))
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("emitted=[2,2]\n"));
    assert!(text.contains("verify_depth=6\n"));
    assert!(text.ends_with("status=PASS\n"));
}

#[test]
fn export_dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q3xq3.dot");
    let o = bin()
        .args(["export-dot", "--radius", "3", "--out"])
        .arg(&out)
        .arg(spec("q3xq3"))
        .output()
        .unwrap();
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("fillcolor=gold"));
}

#[test]
fn examples_written_match_bundled_specs() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin().args(["examples", "--out"]).arg(dir.path()).output().unwrap();
    assert!(o.status.success());
    for name in cosetdyn::gallery::GALLERY {
        let written = std::fs::read_to_string(dir.path().join(format!("{name}.spec"))).unwrap();
        assert_eq!(written, std::fs::read_to_string(spec(name)).unwrap(), "{name}");
    }
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "[group G]\norder = x\n").unwrap();
    let o = bin().arg("validate").arg(&bad).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = bin().args(["classify", "--target", "nope"]).arg(spec("q3")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn timing_is_opt_in() {
    let run = |extra: &[&str]| {
        let o = bin()
            .args(["entropy", "--format", "machine"])
            .args(extra)
            .arg(spec("z2_matrix"))
            .output()
            .unwrap();
        stdout(&o)
    };
    assert_eq!(run(&[]), run(&[]));
    assert!(!run(&[]).contains("elapsed_ms"));
    assert!(run(&["--timing"]).contains("elapsed_ms="));
}
