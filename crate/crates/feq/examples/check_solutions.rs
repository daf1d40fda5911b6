//! Checks every handwritten solution bundled with the corpus by exact
//! polynomial identity, with free parameters kept symbolic.
//!
//!     cargo run -p feq --example check_solutions

use feq::runner::check_solution;

fn main() {
    for p in feq::load_corpus().expect("bundled corpus loads") {
        for s in &p.solutions {
            let verdict = match check_solution(&p, s) {
                Ok(true) => "valid".to_string(),
                Ok(false) => "INVALID".to_string(),
                Err(reason) => format!("not checkable ({reason})"),
            };
            println!("{:<5} {:<20} {}", p.name, s.describe(), verdict);
        }
    }
}
