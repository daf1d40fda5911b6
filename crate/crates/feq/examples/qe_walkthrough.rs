//! Walks one problem through the pipeline stage by stage: template
//! inlining, coefficient matching, and solved-form extraction.
//!
//!     cargo run -p feq --example qe_walkthrough

use std::collections::BTreeSet;

use feq::{corpus_problem, eliminate, inline, solve_constraint, Template};

fn main() {
    let p = corpus_problem("Eq1").expect("bundled problem");
    let t = Template::Linear;
    println!("problem:   {}", p.equations[0]);
    println!("template:  f(x) = {}", t.shape());

    // Replace f(t) by a*t + b everywhere and normalize lhs - rhs.
    let inlined = inline(&p, t).expect("Eq1 is equational");
    println!("inlined:   {} = 0", inlined[0]);

    // Over the reals the identity holds for all x, y exactly when every
    // coefficient with respect to x, y vanishes.
    let vars: BTreeSet<String> = p.equations[0].vars.iter().cloned().collect();
    let constraint = eliminate(&inlined, &vars);
    println!("constraint: {}", constraint);
    println!("            {} (constant-first orientation)", constraint.display_constant_first());

    let solved = solve_constraint(&constraint, t.coefficients()).expect("solvable");
    println!("solved:    {}", solved);
    for d in solved.disjuncts() {
        println!("solution:  f(x) = {}", t.solution_body("x", d));
    }
}
