//! End-to-end tests of the `feq` binary: exit codes, report formats,
//! emission directories, and solver configuration via flags, config file
//! and FEQ_SOLVER_PATH.

use std::os::unix::fs::PermissionsExt;
use std::path::Path;
use std::process::Command;

fn feq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_feq"))
}

fn write_stub(dir: &Path, name: &str, body: &str) {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    let mut perms = std::fs::metadata(&path).unwrap().permissions();
    perms.set_mode(0o755);
    std::fs::set_permissions(&path, perms).unwrap();
}

#[test]
fn solves_the_bundled_corpus() {
    let out = feq().args(["solve", "corpus"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("Template status"));
    assert!(stdout.contains("Eq1"));
    assert!(stdout.contains("f(x) = x^2 [mquad]"));
    assert!(stdout.contains("unsupported: order side-condition `increasing`"));
}

#[test]
fn template_flag_pins_the_template() {
    let out = feq()
        .args(["solve", "corpus", "--template", "linear"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    // U91 under the pinned linear template has both affine solutions.
    assert!(stdout.contains("f(x) = x ; f(x) = x + 1 [linear]"), "{stdout}");
}

#[test]
fn csv_report() {
    let out = feq()
        .args(["solve", "corpus", "--report", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("problem,c,ax,ax+b,ax^2,ax^2+bx+c,solved_template,solutions"));
    assert!(stdout.contains("problem,prove,check"));
}

#[test]
fn single_file_and_emission_directory() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("square.feq");
    std::fs::write(
        &problem,
        "problem square\nassert forall x y . f(x+y) + f(x-y) = 2*f(x) + 2*y^2\nsolution f(x) = x^2 + b param b : Real\n",
    )
    .unwrap();
    let emit_dir = dir.path().join("out");
    let out = feq()
        .args([
            "solve",
            problem.to_str().unwrap(),
            "--emit",
            emit_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    for name in [
        "square.find.smt2",
        "square.prove.smt2",
        "square.check1.smt2",
        "square.quad.second.tv.smt2",
        "square.mlinear.p",
    ] {
        assert!(emit_dir.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn exit_code_two_when_everything_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("only.feq"),
        "problem only\nassert forall x y . f(x) + f(y) = f(x+y)\nside increasing\n",
    )
    .unwrap();
    let out = feq()
        .args(["solve", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_one_on_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.feq");
    std::fs::write(&bad, "problem bad\nassert forall x . f(x) = x/y\n").unwrap();
    let out = feq().args(["solve", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("division"));
}

#[test]
fn solver_lookup_via_feq_solver_path() {
    let dir = tempfile::tempdir().unwrap();
    write_stub(dir.path(), "stub-smt", "#!/bin/sh\necho unsat\n");
    let out = feq()
        .args([
            "solve",
            "corpus",
            "--template",
            "mquad",
            "--solver",
            "stub=stub-smt {file}",
        ])
        .env("FEQ_SOLVER_PATH", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    // C1's monomial-quadratic solved form is certified by the stub.
    assert!(stdout.contains("f(x) = x^2 [mquad, verified]"), "{stdout}");
}

#[test]
fn solver_config_file() {
    let dir = tempfile::tempdir().unwrap();
    write_stub(dir.path(), "prover", "#!/bin/sh\necho Proved\n");
    let config = dir.path().join("solvers.conf");
    std::fs::write(
        &config,
        format!(
            "stub = {} {{file}}\nstub.unsat = Proved\n",
            dir.path().join("prover").display()
        ),
    )
    .unwrap();
    let out = feq()
        .args([
            "solve",
            "corpus",
            "--template",
            "constant",
            "--config",
            config.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verified"), "{stdout}");
}

#[test]
fn eager_mode_with_a_stub_solver_marks_templates() {
    let dir = tempfile::tempdir().unwrap();
    write_stub(dir.path(), "unsat-stub", "#!/bin/sh\necho unsat\n");
    let out = feq()
        .args([
            "solve",
            "corpus",
            "--mode",
            "eager",
            "--template",
            "linear",
            "--solver",
            "stub=unsat-stub {file}",
        ])
        .env("FEQ_SOLVER_PATH", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("✓"), "{stdout}");
    assert!(stdout.contains("eager mode"), "{stdout}");
}
