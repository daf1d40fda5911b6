//! Solves a single problem written in the DSL, pinned to one template,
//! and prints each pipeline stage.
//!
//!     cargo run -p feq --example solve_one

use feq::runner::{run_lazy, PipelineOptions};
use feq::{parse_problem, Template};

const PROBLEM: &str = "
# All f with f((x-y)^2) = f(x)^2 - 2x f(y) + y^2.
problem U91
domain Real
function f : Real -> Real
assert forall x y . f((x-y)^2) = f(x)^2 - 2*x*f(y) + y^2
solution f(x) = x
solution f(x) = x + 1
";

fn main() {
    let problem = parse_problem(PROBLEM).expect("problem parses");
    println!("{}", problem);

    let opts = PipelineOptions {
        template: Some(Template::Linear),
        ..PipelineOptions::default()
    };
    let report = run_lazy(&problem, &opts);

    let run = &report.runs[0];
    println!("constraint:  {}", run.constraint.as_ref().unwrap());
    println!("solved form: {}", report.solved_form().unwrap());
    for s in report.solutions() {
        println!("solution:    {}", s);
    }
    for (desc, ok) in &report.disjunct_checks {
        println!("checked:     {} -> {}", desc, if *ok { "valid" } else { "INVALID" });
    }
}
