//! Dispatches a query to an external solver process. A stub shell script
//! stands in for a real SMT solver so the example runs anywhere; point the
//! config at cvc5 or z3 to certify results for real.
//!
//!     cargo run -p feq --example external_solver

use std::io::Write;
use std::os::unix::fs::PermissionsExt;
use std::time::Duration;

use feq::emit::emit_uniqueness;
use feq::runner::{external_solve, AnswerTokens, SolverConfig};
use feq::runner::{run_lazy, PipelineOptions};
use feq::{corpus_problem, Template};

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let script = dir.path().join("stub-solver");
    let mut f = std::fs::File::create(&script).expect("create stub");
    // A real solver would read the file; the stub just answers.
    writeln!(f, "#!/bin/sh\necho unsat").unwrap();
    drop(f);
    let mut perms = std::fs::metadata(&script).unwrap().permissions();
    perms.set_mode(0o755);
    std::fs::set_permissions(&script, perms).unwrap();

    let cfg = SolverConfig {
        name: "stub".to_string(),
        command: vec![script.to_string_lossy().into_owned(), "{file}".to_string()],
        timeout: Duration::from_secs(10),
        answers: AnswerTokens::default(),
    };

    // Lazy pipeline on C1 under the monomial quadratic template, then the
    // uniqueness query through the solver.
    let p = corpus_problem("C1").expect("bundled problem");
    let opts = PipelineOptions {
        template: Some(Template::MonomialQuadratic),
        ..PipelineOptions::default()
    };
    let report = run_lazy(&p, &opts);
    let sf = report.solved_form().expect("C1 has a monomial quadratic solved form");
    println!("solved form: {}", sf);

    let query = emit_uniqueness(&p, Template::MonomialQuadratic, sf).expect("nonempty");
    let outcome = external_solve(&query.text(), ".smt2", &cfg);
    println!(
        "{} -> {} in {:?}",
        query.filename(),
        outcome.status.symbol(),
        outcome.elapsed
    );
    if outcome.status == feq::runner::SolverStatus::Unsat {
        println!("uniqueness certified: {} is the only solution", report.solutions()[0]);
    }
}
