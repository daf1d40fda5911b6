//! Find all solutions of real functional equations by polynomial
//! templates and quantifier elimination.
//!
//! Given a specification such as `forall x y . f(x+y) = x*f(y) + y*f(x)`,
//! the pipeline fixes a polynomial shape for `f` (one of `c`, `a*x`,
//! `a*x^2`, `a*x + b`, `a*x^2 + b*x + c`), inlines it, eliminates the
//! universally quantified variables by coefficient matching, and
//! normalizes the residual constraint into a solved form that enumerates
//! every solution function in the shape, e.g. `{a = 1, b = 0} ∨
//! {a = 1, b = 1}`. Obligations for external SMT solvers and unit-equality
//! provers are generated alongside, so template coverage and solution
//! uniqueness can be certified independently.
//!
//! The `examples/` directory walks through each capability; start with
//! `solve_corpus`. The `feq` binary wraps the same pipeline:
//!
//! ```text
//! feq solve corpus --template linear
//! feq solve path/to/problem.feq --emit out/
//! ```

pub mod emit;
pub mod expr;
pub mod formula;
pub mod poly;
pub mod problem;
pub mod qe;
pub mod runner;
pub mod solved;
pub mod template;

pub use expr::{parse_problem, Equation, Expression, ParseError, Rational};
pub use formula::{CmpOp, Formula};
pub use poly::{to_polynomial, Monomial, NotInlined, Polynomial, Symbol};
pub use problem::{
    classify_fragment, corpus_problem, load_corpus, load_corpus_dir, Fragment, Problem,
    SolutionCandidate,
};
pub use qe::{eliminate, normalize_constraint, CoefficientConstraint};
pub use solved::{
    solve_constraint, to_solved_form, Assignment, AssignmentAtom, NoSolvedForm, SolvedForm,
};
pub use template::{
    inline, membership_formula, verification_obligation, Template, Variant,
    VerificationObligation,
};
