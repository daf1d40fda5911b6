//! Generation of external prover inputs: SMT-LIB2 queries for the
//! find/prove/check obligations, template-verification obligations in both
//! variants, solved-form uniqueness queries, and unit-equality tasks.
//!
//! Output is deterministic, and every emitted SMT-LIB2 file parses back
//! with the bundled s-expression reader into the tree it was printed from.

mod sexp;
mod uniteq;

pub use sexp::{parse_sexps, Sexp, SexpError};
pub use uniteq::{emit_uniteq, NotUnitEquational, RingTerm, UnitEqTask};

use crate::expr::{Expression, Rational};
use crate::formula::{side_condition_formula, CmpOp, Formula};
use crate::problem::{Problem, SolutionCandidate};
use crate::solved::SolvedForm;
use crate::template::{assignment_identity, verification_obligation, Template, Variant};

/// What a query asks of the solver and what answer certifies success.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    /// Satisfiability of the specification itself.
    Find,
    /// Specification plus negation of all proposed solutions.
    Prove,
    /// One proposed solution plus the negated specification (0-based index).
    Check(usize),
    /// Specification plus negated template membership.
    TemplateVerification(Template, Variant),
    /// Specification plus negation of a solved form's induced identities.
    Uniqueness(Template),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Sat,
    Unsat,
}

impl Expectation {
    pub fn token(self) -> &'static str {
        match self {
            Expectation::Sat => "sat",
            Expectation::Unsat => "unsat",
        }
    }
}

/// A complete SMT-LIB2 query in the `AUFNIRA` logic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smt2Query {
    pub problem: String,
    pub kind: QueryKind,
    pub logic: &'static str,
    pub expected: Expectation,
    comments: Vec<String>,
    commands: Vec<Sexp>,
}

impl Smt2Query {
    pub fn commands(&self) -> &[Sexp] {
        &self.commands
    }

    /// Renders the query, one command per line.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("; ");
            out.push_str(c);
            out.push('\n');
        }
        for cmd in &self.commands {
            out.push_str(&cmd.to_string());
            out.push('\n');
        }
        out
    }

    /// The assertion commands only, for syntactic comparisons.
    pub fn assertions(&self) -> Vec<String> {
        self.commands
            .iter()
            .filter(|c| matches!(c, Sexp::List(items) if items.first() == Some(&Sexp::atom("assert"))))
            .map(|c| c.to_string())
            .collect()
    }

    /// File name under the emission directory.
    pub fn filename(&self) -> String {
        match self.kind {
            QueryKind::Find => format!("{}.find.smt2", self.problem),
            QueryKind::Prove => format!("{}.prove.smt2", self.problem),
            QueryKind::Check(i) => format!("{}.check{}.smt2", self.problem, i + 1),
            QueryKind::TemplateVerification(t, v) => {
                format!("{}.{}.{}.tv.smt2", self.problem, t.tag(), v.tag())
            }
            QueryKind::Uniqueness(_) => format!("{}.unique.smt2", self.problem),
        }
    }
}

fn rational_sexp(r: &Rational) -> Sexp {
    let mag = r.abs();
    let core = if mag.is_integer() {
        Sexp::atom(format!("{}.0", mag.numer()))
    } else {
        Sexp::call(
            "/",
            vec![
                Sexp::atom(format!("{}.0", mag.numer())),
                Sexp::atom(format!("{}.0", mag.denom())),
            ],
        )
    };
    if r.is_negative() {
        Sexp::call("-", vec![core])
    } else {
        core
    }
}

/// Expression to SMT-LIB2 term. Powers are expanded into products since
/// the Reals theory has no exponentiation symbol.
pub fn expr_to_sexp(e: &Expression) -> Sexp {
    match e {
        Expression::Const(r) => rational_sexp(r),
        Expression::Var(n) | Expression::Coeff(n) => Sexp::atom(n.clone()),
        Expression::Sum(cs) => Sexp::call("+", cs.iter().map(expr_to_sexp).collect()),
        Expression::Product(cs) => Sexp::call("*", cs.iter().map(expr_to_sexp).collect()),
        Expression::Neg(c) => Sexp::call("-", vec![expr_to_sexp(c)]),
        Expression::Pow(c, n) => {
            let base = expr_to_sexp(c);
            Sexp::call("*", (0..*n).map(|_| base.clone()).collect())
        }
        Expression::Apply(arg) => Sexp::call("f", vec![expr_to_sexp(arg)]),
    }
}

fn binder_list(vars: &[String]) -> Sexp {
    Sexp::list(
        vars.iter()
            .map(|v| Sexp::list(vec![Sexp::atom(v.clone()), Sexp::atom("Real")]))
            .collect(),
    )
}

pub fn formula_to_sexp(f: &Formula) -> Sexp {
    match f {
        Formula::Eq(l, r) => Sexp::call("=", vec![expr_to_sexp(l), expr_to_sexp(r)]),
        Formula::Cmp(op, l, r) => {
            let head = match op {
                CmpOp::Le => "<=",
                CmpOp::Ge => ">=",
                CmpOp::Lt => "<",
                CmpOp::Gt => ">",
            };
            Sexp::call(head, vec![expr_to_sexp(l), expr_to_sexp(r)])
        }
        Formula::And(fs) => {
            if fs.is_empty() {
                Sexp::atom("true")
            } else {
                Sexp::call("and", fs.iter().map(formula_to_sexp).collect())
            }
        }
        Formula::Or(fs) => {
            if fs.is_empty() {
                Sexp::atom("false")
            } else {
                Sexp::call("or", fs.iter().map(formula_to_sexp).collect())
            }
        }
        Formula::Not(inner) => Sexp::call("not", vec![formula_to_sexp(inner)]),
        Formula::Implies(a, b) => {
            Sexp::call("=>", vec![formula_to_sexp(a), formula_to_sexp(b)])
        }
        Formula::Forall(vars, body) => {
            Sexp::call("forall", vec![binder_list(vars), formula_to_sexp(body)])
        }
        Formula::Exists(vars, body) => {
            Sexp::call("exists", vec![binder_list(vars), formula_to_sexp(body)])
        }
    }
}

/// The specification as closed formulas, plus any side-condition markers
/// that have no formalization and survive only as comments.
fn spec_formulas(p: &Problem) -> (Vec<Formula>, Vec<String>) {
    let mut formulas: Vec<Formula> = p
        .equations
        .iter()
        .map(|eq| Formula::forall(eq.vars.clone(), Formula::eq(eq.lhs.clone(), eq.rhs.clone())))
        .collect();
    let mut unformalized = Vec::new();
    for marker in &p.side_conditions {
        match side_condition_formula(marker) {
            Some(f) => formulas.push(f),
            None => unformalized.push(marker.clone()),
        }
    }
    (formulas, unformalized)
}

/// Negation of one closed identity, with the universal quantifier pushed
/// to an existential witness when there are no leading existentials.
fn negate_closed(f: Formula) -> Formula {
    match f {
        Formula::Forall(vars, body) => match *body {
            Formula::Eq(l, r) => Formula::exists(vars, Formula::not(Formula::Eq(l, r))),
            other => Formula::not(Formula::forall(vars, other)),
        },
        other => Formula::not(other),
    }
}

/// Negation of a disjunction of identities: a single identity is negated
/// directly (prenexed when it is purely universal), several identities
/// negate the disjunction.
fn negate_identities(mut identities: Vec<Formula>) -> Formula {
    match identities.len() {
        0 => Formula::not(Formula::Or(vec![])),
        1 => negate_closed(identities.pop().unwrap()),
        _ => Formula::not(Formula::Or(identities)),
    }
}

/// The identity a solution candidate induces, with free parameters
/// existentially quantified and range constraints conjoined.
fn candidate_identity(c: &SolutionCandidate) -> Formula {
    let base = Formula::forall(
        vec![c.var.clone()],
        Formula::eq(
            Expression::apply(Expression::var(&c.var)),
            c.body.clone(),
        ),
    );
    if c.params.is_empty() {
        return base;
    }
    let mut conjuncts: Vec<Formula> = c
        .params
        .iter()
        .filter_map(|p| {
            p.constraint.as_ref().map(|(op, bound)| {
                Formula::Cmp(
                    *op,
                    Expression::coeff(&p.name),
                    Expression::constant(bound.clone()),
                )
            })
        })
        .collect();
    let body = if conjuncts.is_empty() {
        base
    } else {
        conjuncts.push(base);
        Formula::And(conjuncts)
    };
    Formula::exists(c.params.iter().map(|p| p.name.clone()).collect(), body)
}

struct QueryBuilder {
    problem: String,
    kind: QueryKind,
    expected: Expectation,
    comments: Vec<String>,
    declarations: Vec<Sexp>,
    asserts: Vec<Formula>,
    declare_f: bool,
}

impl QueryBuilder {
    fn new(p: &Problem, kind: QueryKind, expected: Expectation, what: &str) -> QueryBuilder {
        QueryBuilder {
            problem: p.name.clone(),
            kind,
            expected,
            comments: vec![format!("{}: {} query", p.name, what)],
            declarations: Vec::new(),
            asserts: Vec::new(),
            declare_f: true,
        }
    }

    fn finish(self) -> Smt2Query {
        let mut commands = vec![
            Sexp::call("set-logic", vec![Sexp::atom("AUFNIRA")]),
            Sexp::call(
                "set-info",
                vec![Sexp::atom(":status"), Sexp::atom(self.expected.token())],
            ),
        ];
        if self.declare_f {
            commands.push(Sexp::call(
                "declare-fun",
                vec![
                    Sexp::atom("f"),
                    Sexp::list(vec![Sexp::atom("Real")]),
                    Sexp::atom("Real"),
                ],
            ));
        }
        commands.extend(self.declarations);
        for f in &self.asserts {
            commands.push(Sexp::call("assert", vec![formula_to_sexp(f)]));
        }
        commands.push(Sexp::list(vec![Sexp::atom("check-sat")]));
        Smt2Query {
            problem: self.problem,
            kind: self.kind,
            logic: "AUFNIRA",
            expected: self.expected,
            comments: self.comments,
            commands,
        }
    }

    fn note_unformalized(&mut self, markers: &[String]) {
        for m in markers {
            self.comments
                .push(format!("side condition without a formalization: {}", m));
        }
    }
}

/// `find`: the specification alone; satisfiable iff a solution exists.
pub fn emit_find(p: &Problem) -> Smt2Query {
    let (formulas, markers) = spec_formulas(p);
    let mut b = QueryBuilder::new(p, QueryKind::Find, Expectation::Sat, "find");
    b.note_unformalized(&markers);
    b.asserts = formulas;
    b.finish()
}

/// `prove`: the specification plus the negation of all proposed solutions;
/// unsatisfiable iff the proposed solutions cover every solution.
pub fn emit_prove(p: &Problem) -> Smt2Query {
    let (formulas, markers) = spec_formulas(p);
    let mut b = QueryBuilder::new(p, QueryKind::Prove, Expectation::Unsat, "prove");
    b.note_unformalized(&markers);
    b.asserts = formulas;
    b.asserts.push(negate_identities(
        p.solutions.iter().map(candidate_identity).collect(),
    ));
    b.finish()
}

/// `check`: one proposed solution plus the negated specification;
/// unsatisfiable iff the proposal really solves the problem. Free
/// parameters become declared constants. With `inline`, occurrences of
/// `f` are replaced by the candidate body instead of asserting the
/// defining identity.
pub fn emit_check(p: &Problem, index: usize, inline: bool) -> Smt2Query {
    let candidate = &p.solutions[index];
    let (formulas, markers) = spec_formulas(p);
    let mut b = QueryBuilder::new(p, QueryKind::Check(index), Expectation::Unsat, "check");
    b.comments[0] = format!(
        "{}: check query for proposed solution {}",
        p.name,
        candidate.describe()
    );
    b.note_unformalized(&markers);
    for param in &candidate.params {
        b.declarations.push(Sexp::call(
            "declare-const",
            vec![Sexp::atom(param.name.clone()), Sexp::atom("Real")],
        ));
        if let Some((op, bound)) = &param.constraint {
            b.asserts.push(Formula::Cmp(
                *op,
                Expression::coeff(&param.name),
                Expression::constant(bound.clone()),
            ));
        }
    }

    let negated_spec = |formulas: Vec<Formula>| -> Formula {
        if formulas.len() == 1 {
            negate_closed(formulas.into_iter().next().unwrap())
        } else {
            Formula::not(Formula::And(formulas))
        }
    };

    if inline {
        let inlined: Vec<Formula> = formulas
            .iter()
            .map(|f| formula_inline_candidate(f, candidate))
            .collect();
        b.declare_f = inlined.iter().any(formula_applies_f);
        b.asserts.push(negated_spec(inlined));
    } else {
        b.asserts.push(Formula::forall(
            vec![candidate.var.clone()],
            Formula::eq(
                Expression::apply(Expression::var(&candidate.var)),
                candidate.body.clone(),
            ),
        ));
        b.asserts.push(negated_spec(formulas));
    }
    b.finish()
}

/// Template-verification obligation in SMT-LIB2; unsat means every
/// solution fits the template.
pub fn emit_template_verification(p: &Problem, t: Template, variant: Variant) -> Smt2Query {
    let ob = verification_obligation(p, t, variant);
    let mut b = QueryBuilder::new(
        p,
        QueryKind::TemplateVerification(t, variant),
        Expectation::Unsat,
        &format!("{} template verification ({} variant)", t.tag(), variant.tag()),
    );
    let (_, markers) = spec_formulas(p);
    b.note_unformalized(&markers);
    match ob.formula {
        Formula::And(conjuncts) => b.asserts = conjuncts,
        other => b.asserts = vec![other],
    }
    b.finish()
}

/// Uniqueness query for a solved form: the specification plus the negation
/// of the disjunction of induced identities. Unsat means the solved form
/// covers every solution, not only those inside the template. An empty
/// solved form asserts nothing, so no query is produced.
pub fn emit_uniqueness(p: &Problem, t: Template, sf: &SolvedForm) -> Option<Smt2Query> {
    if sf.is_bottom() {
        return None;
    }
    let (formulas, markers) = spec_formulas(p);
    let mut b = QueryBuilder::new(
        p,
        QueryKind::Uniqueness(t),
        Expectation::Unsat,
        &format!("uniqueness of the {} solved form", t.tag()),
    );
    b.comments.push(format!("solved form: {}", sf));
    b.note_unformalized(&markers);
    b.asserts = formulas;
    let identities: Vec<Formula> = sf
        .disjuncts()
        .iter()
        .map(|d| assignment_identity(t, d))
        .collect();
    b.asserts.push(negate_identities(identities));
    Some(b.finish())
}

fn formula_inline_candidate(f: &Formula, c: &SolutionCandidate) -> Formula {
    match f {
        Formula::Eq(l, r) => Formula::Eq(c.inline_into(l), c.inline_into(r)),
        Formula::Cmp(op, l, r) => Formula::Cmp(*op, c.inline_into(l), c.inline_into(r)),
        Formula::And(fs) => {
            Formula::And(fs.iter().map(|g| formula_inline_candidate(g, c)).collect())
        }
        Formula::Or(fs) => {
            Formula::Or(fs.iter().map(|g| formula_inline_candidate(g, c)).collect())
        }
        Formula::Not(g) => Formula::not(formula_inline_candidate(g, c)),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(formula_inline_candidate(a, c)),
            Box::new(formula_inline_candidate(b, c)),
        ),
        Formula::Forall(vars, body) => Formula::Forall(
            vars.clone(),
            Box::new(formula_inline_candidate(body, c)),
        ),
        Formula::Exists(vars, body) => Formula::Exists(
            vars.clone(),
            Box::new(formula_inline_candidate(body, c)),
        ),
    }
}

fn formula_applies_f(f: &Formula) -> bool {
    match f {
        Formula::Eq(l, r) | Formula::Cmp(_, l, r) => l.contains_apply() || r.contains_apply(),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().any(formula_applies_f),
        Formula::Not(g) => formula_applies_f(g),
        Formula::Implies(a, b) => formula_applies_f(a) || formula_applies_f(b),
        Formula::Forall(_, body) | Formula::Exists(_, body) => formula_applies_f(body),
    }
}
