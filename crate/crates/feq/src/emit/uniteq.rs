//! Unit-equality encodings for completion-based equational provers.
//!
//! Real arithmetic is axiomatized as a commutative ring with identity over
//! an abstract sort `R`; rings rather than fields on purpose, since the
//! nonzero-divisor side condition of fields is not a unit equation. A task
//! is eligible only when every property of `f` is a unit equation over the
//! reals, there is no division, and every literal is an integer. The goal
//! pins a fresh constant `d` and asks the prover to rewrite `f(d)` into
//! the template shape.

use std::fmt;

use thiserror::Error;

use crate::expr::{Expression, Rational};
use crate::problem::{classify_fragment, Fragment, Problem, UnsupportedReason};
use crate::template::Template;

/// Terms over the ring signature: `plus`, `times`, unary `minus`, the
/// constants `zero`, `one` and the goal witness `d`, plus `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingTerm {
    /// A universally quantified variable; rendered upper-case.
    Var(String),
    Zero,
    One,
    /// The fresh goal constant `d`, never mentioned in hypotheses.
    Witness,
    Minus(Box<RingTerm>),
    Plus(Box<RingTerm>, Box<RingTerm>),
    Times(Box<RingTerm>, Box<RingTerm>),
    Apply(Box<RingTerm>),
}

impl RingTerm {
    fn plus(a: RingTerm, b: RingTerm) -> RingTerm {
        RingTerm::Plus(Box::new(a), Box::new(b))
    }

    fn times(a: RingTerm, b: RingTerm) -> RingTerm {
        RingTerm::Times(Box::new(a), Box::new(b))
    }

    fn minus(a: RingTerm) -> RingTerm {
        RingTerm::Minus(Box::new(a))
    }

    fn apply(a: RingTerm) -> RingTerm {
        RingTerm::Apply(Box::new(a))
    }

    fn var(n: &str) -> RingTerm {
        RingTerm::Var(n.to_uppercase())
    }

    /// Nonnegative integers as `one`-sums: 2 is `plus(one, one)`.
    fn numeral(n: u64) -> RingTerm {
        match n {
            0 => RingTerm::Zero,
            1 => RingTerm::One,
            _ => RingTerm::plus(RingTerm::numeral(n - 1), RingTerm::One),
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            RingTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            RingTerm::Zero | RingTerm::One | RingTerm::Witness => {}
            RingTerm::Minus(a) | RingTerm::Apply(a) => a.collect_vars(out),
            RingTerm::Plus(a, b) | RingTerm::Times(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for RingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTerm::Var(v) => write!(f, "{}", v),
            RingTerm::Zero => write!(f, "zero"),
            RingTerm::One => write!(f, "one"),
            RingTerm::Witness => write!(f, "d"),
            RingTerm::Minus(a) => write!(f, "minus({})", a),
            RingTerm::Plus(a, b) => write!(f, "plus({}, {})", a, b),
            RingTerm::Times(a, b) => write!(f, "times({}, {})", a, b),
            RingTerm::Apply(a) => write!(f, "f({})", a),
        }
    }
}

/// Why a problem cannot be encoded for a unit-equality prover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotUnitEquational {
    #[error("order side-condition `{0}` is not a unit equation")]
    SideCondition(String),
    #[error("non-real domain `{0}`")]
    NonRealDomain(String),
    #[error("literal {0} is not an integer")]
    NonIntegerLiteral(String),
    #[error("literal {0} is too large to encode as a one-sum")]
    OversizedLiteral(String),
}

/// A complete prover task: ring axioms, the problem's equations as
/// hypotheses, and one per-template goal equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitEqTask {
    pub problem: String,
    pub template: Template,
    pub axioms: Vec<(&'static str, RingTerm, RingTerm)>,
    pub hypotheses: Vec<(RingTerm, RingTerm)>,
    pub goal: (RingTerm, RingTerm),
}

fn ring_axioms() -> Vec<(&'static str, RingTerm, RingTerm)> {
    use RingTerm as T;
    let x = || T::var("x");
    let y = || T::var("y");
    let z = || T::var("z");
    vec![
        ("plus_commutative", T::plus(x(), y()), T::plus(y(), x())),
        (
            "plus_associative",
            T::plus(T::plus(x(), y()), z()),
            T::plus(x(), T::plus(y(), z())),
        ),
        ("plus_zero", T::plus(x(), T::Zero), x()),
        ("plus_inverse", T::plus(x(), T::minus(x())), T::Zero),
        ("times_commutative", T::times(x(), y()), T::times(y(), x())),
        (
            "times_associative",
            T::times(T::times(x(), y()), z()),
            T::times(x(), T::times(y(), z())),
        ),
        ("times_one", T::times(x(), T::One), x()),
        (
            "distributive",
            T::times(x(), T::plus(y(), z())),
            T::plus(T::times(x(), y()), T::times(x(), z())),
        ),
    ]
}

fn encode(e: &Expression) -> Result<RingTerm, NotUnitEquational> {
    match e {
        Expression::Const(r) => encode_literal(r),
        Expression::Var(n) => Ok(RingTerm::var(n)),
        Expression::Coeff(n) => {
            unreachable!("problem equations have no coefficient symbols ({n})")
        }
        Expression::Sum(cs) => {
            let mut terms = cs.iter().map(encode);
            let first = terms.next().expect("sums have children")?;
            terms.try_fold(first, |acc, t| Ok(RingTerm::plus(acc, t?)))
        }
        Expression::Product(cs) => {
            let mut terms = cs.iter().map(encode);
            let first = terms.next().expect("products have children")?;
            terms.try_fold(first, |acc, t| Ok(RingTerm::times(acc, t?)))
        }
        Expression::Neg(c) => Ok(RingTerm::minus(encode(c)?)),
        Expression::Pow(c, n) => {
            let base = encode(c)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = RingTerm::times(acc, base.clone());
            }
            Ok(acc)
        }
        Expression::Apply(arg) => Ok(RingTerm::apply(encode(arg)?)),
    }
}

fn encode_literal(r: &Rational) -> Result<RingTerm, NotUnitEquational> {
    if !r.is_integer() {
        return Err(NotUnitEquational::NonIntegerLiteral(r.to_string()));
    }
    let magnitude: u64 = r
        .abs()
        .numer()
        .try_into()
        .map_err(|_| NotUnitEquational::OversizedLiteral(r.to_string()))?;
    let term = RingTerm::numeral(magnitude);
    if r.is_negative() {
        Ok(RingTerm::minus(term))
    } else {
        Ok(term)
    }
}

fn goal_equation(t: Template) -> (RingTerm, RingTerm) {
    use RingTerm as T;
    let d = || T::Witness;
    let f = |x: RingTerm| T::apply(x);
    let f0 = || f(T::Zero);
    let f1 = || f(T::One);
    let fm1 = || f(T::minus(T::One));
    let two = || T::plus(T::One, T::One);
    match t {
        Template::Constant => (f(d()), f0()),
        Template::MonomialLinear => (f(d()), T::times(f1(), d())),
        Template::MonomialQuadratic => (f(d()), T::times(f1(), T::times(d(), d()))),
        Template::Linear => (
            f(d()),
            T::plus(T::times(T::plus(f1(), T::minus(f0())), d()), f0()),
        ),
        Template::Quadratic => (
            T::times(two(), f(d())),
            T::plus(
                T::plus(
                    T::times(
                        T::plus(T::plus(f1(), fm1()), T::minus(T::times(two(), f0()))),
                        T::times(d(), d()),
                    ),
                    T::times(T::plus(f1(), T::minus(fm1())), d()),
                ),
                T::times(two(), f0()),
            ),
        ),
    }
}

/// Checks eligibility and builds the unit-equality task for one template.
pub fn emit_uniteq(p: &Problem, t: Template) -> Result<UnitEqTask, NotUnitEquational> {
    match classify_fragment(p) {
        Fragment::Equational => {}
        Fragment::Unsupported(UnsupportedReason::SideCondition(m)) => {
            return Err(NotUnitEquational::SideCondition(m));
        }
        Fragment::Unsupported(UnsupportedReason::NonRealDomain(d)) => {
            return Err(NotUnitEquational::NonRealDomain(d));
        }
    }
    let mut hypotheses = Vec::new();
    for eq in &p.equations {
        hypotheses.push((encode(&eq.lhs)?, encode(&eq.rhs)?));
    }
    Ok(UnitEqTask {
        problem: p.name.clone(),
        template: t,
        axioms: ring_axioms(),
        hypotheses,
        goal: goal_equation(t),
    })
}

impl UnitEqTask {
    /// TPTP CNF rendering: one positive unit clause per axiom and
    /// hypothesis, and a negated-equality conjecture clause.
    pub fn to_tptp(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "% {}: all solutions fit the {} template ({})\n",
            self.problem,
            self.template.tag(),
            self.template.shape()
        ));
        for (name, lhs, rhs) in &self.axioms {
            out.push_str(&format!("cnf({}, axiom, {} = {}).\n", name, lhs, rhs));
        }
        for (i, (lhs, rhs)) in self.hypotheses.iter().enumerate() {
            out.push_str(&format!(
                "cnf(hypothesis_{}, hypothesis, {} = {}).\n",
                i + 1,
                lhs,
                rhs
            ));
        }
        out.push_str(&format!(
            "cnf(template_goal, negated_conjecture, {} != {}).\n",
            self.goal.0, self.goal.1
        ));
        out
    }

    /// Legacy sectioned rendering for provers that consume the
    /// NAME/SORTS/SIGNATURE/VARIABLES/EQUATIONS/CONCLUSION layout.
    pub fn to_sectioned(&self) -> String {
        let mut vars = Vec::new();
        for (_, l, r) in &self.axioms {
            l.collect_vars(&mut vars);
            r.collect_vars(&mut vars);
        }
        for (l, r) in &self.hypotheses {
            l.collect_vars(&mut vars);
            r.collect_vars(&mut vars);
        }
        vars.sort();

        let mut out = String::new();
        out.push_str(&format!("NAME        {}_{}\n", self.problem, self.template.tag()));
        out.push_str("SORTS       R\n");
        out.push_str("SIGNATURE   plus : R R -> R\n");
        out.push_str("            times : R R -> R\n");
        out.push_str("            minus : R -> R\n");
        out.push_str("            zero : -> R\n");
        out.push_str("            one : -> R\n");
        out.push_str("            d : -> R\n");
        out.push_str("            f : R -> R\n");
        out.push_str(&format!("VARIABLES   {} : R\n", vars.join(", ")));
        let mut first = true;
        for (name, l, r) in &self.axioms {
            let _ = name;
            let prefix = if first { "EQUATIONS   " } else { "            " };
            first = false;
            out.push_str(&format!("{}{} = {}\n", prefix, l, r));
        }
        for (l, r) in &self.hypotheses {
            out.push_str(&format!("            {} = {}\n", l, r));
        }
        out.push_str(&format!("CONCLUSION  {} = {}\n", self.goal.0, self.goal.1));
        out
    }
}
