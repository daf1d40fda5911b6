//! Prints the SMT-LIB2 queries generated for one problem: the find, prove
//! and check obligations, a template-verification obligation in both
//! variants, and a uniqueness query for a solved form.
//!
//!     cargo run -p feq --example emit_smt2

use feq::emit::{
    emit_check, emit_find, emit_prove, emit_template_verification, emit_uniqueness,
};
use feq::runner::{run_lazy, PipelineOptions};
use feq::{corpus_problem, Template, Variant};

fn main() {
    let p = corpus_problem("Eq1").expect("bundled problem");

    for q in [emit_find(&p), emit_prove(&p), emit_check(&p, 0, false)] {
        println!("--- {} (expect {}) ---", q.filename(), q.expected.token());
        print!("{}", q.text());
        println!();
    }

    for variant in [Variant::First, Variant::Second] {
        let q = emit_template_verification(&p, Template::Linear, variant);
        println!("--- {} (expect {}) ---", q.filename(), q.expected.token());
        print!("{}", q.text());
        println!();
    }

    // Uniqueness query for the solved form the lazy pipeline computes.
    let opts = PipelineOptions {
        template: Some(Template::Linear),
        ..PipelineOptions::default()
    };
    let report = run_lazy(&p, &opts);
    let sf = report.solved_form().expect("Eq1 has a linear solved form");
    let q = emit_uniqueness(&p, Template::Linear, sf).expect("solved form is nonempty");
    println!("--- {} (expect {}) ---", q.filename(), q.expected.token());
    print!("{}", q.text());
}
