//! Prints the unit-equality prover encoding of a problem: real arithmetic
//! axiomatized as a commutative ring with identity, the specification as
//! hypothesis equations, and a per-template goal over a fresh constant d.
//!
//!     cargo run -p feq --example emit_uniteq

use feq::emit::emit_uniteq;
use feq::{corpus_problem, Template};

fn main() {
    let p = corpus_problem("U25").expect("bundled problem");
    let task = emit_uniteq(&p, Template::MonomialLinear).expect("U25 is unit-equational");

    println!("--- TPTP CNF ---");
    print!("{}", task.to_tptp());

    println!();
    println!("--- legacy sectioned format ---");
    print!("{}", task.to_sectioned());

    println!();
    let u2 = corpus_problem("U2").expect("bundled problem");
    match emit_uniteq(&u2, Template::MonomialLinear) {
        Ok(_) => println!("unexpected: U2 should not be eligible"),
        Err(e) => println!("U2 is rejected: {}", e),
    }
}
