//! Feeds a quantifier-free formula straight into the solved-form
//! postprocessor, the way the output of an external quantifier-elimination
//! engine would be consumed. The formula below is the kind a CAD-based
//! engine returns for U91 under the linear template:
//!
//!     -1 + a = 0  and  b >= 0  and  -1 + b <= 0  and  (b = 0 or -1 + b = 0)
//!
//!     cargo run -p feq --example postprocess_formula

use feq::{to_solved_form, CmpOp, Expression, Formula};

fn coeff(name: &str) -> Expression {
    Expression::coeff(name)
}

fn minus_one_plus(name: &str) -> Expression {
    Expression::Sum(vec![Expression::int(-1), coeff(name)])
}

fn main() {
    let formulas = vec![
        Formula::eq(minus_one_plus("a"), Expression::int(0)),
        Formula::Cmp(CmpOp::Ge, coeff("b"), Expression::int(0)),
        Formula::Cmp(CmpOp::Le, minus_one_plus("b"), Expression::int(0)),
        Formula::Or(vec![
            Formula::eq(coeff("b"), Expression::int(0)),
            Formula::eq(minus_one_plus("b"), Expression::int(0)),
        ]),
    ];

    for f in &formulas {
        println!("input: {}", f);
    }
    match to_solved_form(formulas, &["a", "b"]) {
        Ok(sf) => println!("solved form: {}", sf),
        Err(e) => println!("no solved form: {}", e),
    }

    // Failure cases are explicit, never approximated.
    let cubic = vec![Formula::eq(
        Expression::pow(coeff("c"), 3),
        Expression::int(1),
    )];
    match to_solved_form(cubic, &["c"]) {
        Ok(sf) => println!("unexpected: {}", sf),
        Err(e) => println!("c^3 = 1 fails as expected: {}", e),
    }
}
