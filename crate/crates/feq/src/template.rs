//! The five-template catalogue, inlining of `f`, and generation of both
//! template-verification formula variants.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::expr::{Expression, Rational};
use crate::formula::Formula;
use crate::poly::{to_polynomial, Polynomial};
use crate::problem::{classify_fragment, Fragment, Problem, UnsupportedReason};
use crate::solved::Assignment;

/// A polynomial shape for the unknown function. The ordering is the
/// runner's smallest-first order: shapes with fewer coefficients come
/// first, so proofs are attempted on the easiest class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Template {
    Constant,
    MonomialLinear,
    MonomialQuadratic,
    Linear,
    Quadratic,
}

/// Which formulation of template membership a verification obligation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Existentially quantified coefficients: `exists a b. forall x. f(x) = a*x + b`.
    First,
    /// Quantifier-alternation-free over values of `f`, e.g.
    /// `forall x. f(x) = (f(1) - f(0))*x + f(0)`.
    Second,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::First => "first",
            Variant::Second => "second",
        }
    }
}

impl Template {
    /// All templates, smallest coefficient count first.
    pub const ALL: [Template; 5] = [
        Template::Constant,
        Template::MonomialLinear,
        Template::MonomialQuadratic,
        Template::Linear,
        Template::Quadratic,
    ];

    /// Report column order: c, ax, ax+b, ax^2, ax^2+bx+c.
    pub const TABLE_ORDER: [Template; 5] = [
        Template::Constant,
        Template::MonomialLinear,
        Template::Linear,
        Template::MonomialQuadratic,
        Template::Quadratic,
    ];

    /// The named coefficient symbols of the shape.
    pub fn coefficients(self) -> &'static [&'static str] {
        match self {
            Template::Constant => &["c"],
            Template::MonomialLinear => &["a"],
            Template::MonomialQuadratic => &["a"],
            Template::Linear => &["a", "b"],
            Template::Quadratic => &["a", "b", "c"],
        }
    }

    /// Short name used in CLI flags and emitted file names.
    pub fn tag(self) -> &'static str {
        match self {
            Template::Constant => "constant",
            Template::MonomialLinear => "mlinear",
            Template::MonomialQuadratic => "mquad",
            Template::Linear => "linear",
            Template::Quadratic => "quad",
        }
    }

    /// The shape as written in result tables.
    pub fn shape(self) -> &'static str {
        match self {
            Template::Constant => "c",
            Template::MonomialLinear => "a*x",
            Template::MonomialQuadratic => "a*x^2",
            Template::Linear => "a*x + b",
            Template::Quadratic => "a*x^2 + b*x + c",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Template> {
        Template::ALL.iter().copied().find(|t| t.tag() == tag)
    }

    /// The template body instantiated at `arg` with symbolic coefficients.
    pub fn body(self, arg: &Expression) -> Expression {
        let a = Expression::coeff("a");
        match self {
            Template::Constant => Expression::coeff("c"),
            Template::MonomialLinear => Expression::Product(vec![a, arg.clone()]),
            Template::MonomialQuadratic => {
                Expression::Product(vec![a, Expression::pow(arg.clone(), 2)])
            }
            Template::Linear => Expression::Sum(vec![
                Expression::Product(vec![a, arg.clone()]),
                Expression::coeff("b"),
            ]),
            Template::Quadratic => Expression::Sum(vec![
                Expression::Product(vec![a, Expression::pow(arg.clone(), 2)]),
                Expression::Product(vec![Expression::coeff("b"), arg.clone()]),
                Expression::coeff("c"),
            ]),
        }
    }

    /// The body under an assignment, with assigned coefficients folded
    /// away: `a = 1, b = 0` yields `x`, free coefficients stay symbolic.
    pub fn solution_body(self, var: &str, assignment: &Assignment) -> Expression {
        let value = |name: &str| -> Option<Expression> {
            match assignment.get(name) {
                Some(v) if v.is_zero() => None,
                Some(v) => Some(Expression::constant(v.clone())),
                None => Some(Expression::coeff(name)),
            }
        };
        let scaled = |name: &str, base: Expression| -> Option<Expression> {
            value(name).map(|c| {
                if c == Expression::int(1) {
                    base
                } else if c == Expression::int(-1) {
                    Expression::neg(base)
                } else {
                    Expression::Product(vec![c, base])
                }
            })
        };
        let x = Expression::var(var);
        let terms: Vec<Expression> = match self {
            Template::Constant => value("c").into_iter().collect(),
            Template::MonomialLinear => scaled("a", x).into_iter().collect(),
            Template::MonomialQuadratic => {
                scaled("a", Expression::pow(x, 2)).into_iter().collect()
            }
            Template::Linear => [scaled("a", x), value("b")].into_iter().flatten().collect(),
            Template::Quadratic => [
                scaled("a", Expression::pow(x.clone(), 2)),
                scaled("b", x),
                value("c"),
            ]
            .into_iter()
            .flatten()
            .collect(),
        };
        Expression::sum(terms)
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape())
    }
}

/// A closed formula whose unsatisfiability proves that every solution of
/// the problem lies in the template class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationObligation {
    pub problem: String,
    pub template: Template,
    pub variant: Variant,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("problem is outside the equational fragment: {0}")]
pub struct InlineError(pub UnsupportedReason);

/// Replaces every `f(t)` by the template body at `t`, innermost first, so
/// nested applications like `f(f(x))` inline correctly.
pub fn inline_expression(e: &Expression, t: Template) -> Expression {
    match e {
        Expression::Const(_) | Expression::Var(_) | Expression::Coeff(_) => e.clone(),
        Expression::Sum(cs) => {
            Expression::Sum(cs.iter().map(|c| inline_expression(c, t)).collect())
        }
        Expression::Product(cs) => {
            Expression::Product(cs.iter().map(|c| inline_expression(c, t)).collect())
        }
        Expression::Neg(c) => Expression::neg(inline_expression(c, t)),
        Expression::Pow(c, n) => Expression::Pow(Box::new(inline_expression(c, t)), *n),
        Expression::Apply(arg) => t.body(&inline_expression(arg, t)),
    }
}

/// Inlines the template into every equation of the problem and normalizes
/// each `lhs - rhs` to a polynomial over the problem variables and the
/// template coefficients.
pub fn inline(p: &Problem, t: Template) -> Result<Vec<Polynomial>, InlineError> {
    match classify_fragment(p) {
        Fragment::Equational => {}
        Fragment::Unsupported(reason) => return Err(InlineError(reason)),
    }
    let mut out = Vec::new();
    for eq in &p.equations {
        let inlined = inline_expression(&eq.difference(), t);
        let poly = to_polynomial(&inlined)
            .expect("inlining removes every application of the unknown function");
        out.push(poly);
    }
    Ok(out)
}

fn f_at(e: Expression) -> Expression {
    Expression::apply(e)
}

fn f_of_int(n: i64) -> Expression {
    f_at(Expression::int(n))
}

/// The membership identity for a template, in either variant. The second
/// variant pins the coefficients to values of `f` at 0, 1 and -1 and so
/// avoids existential quantifiers.
pub fn membership_formula(t: Template, variant: Variant) -> Formula {
    let x = || Expression::var("x");
    match variant {
        Variant::First => {
            let coeffs = t.coefficients().iter().map(|c| c.to_string()).collect();
            Formula::exists(
                coeffs,
                Formula::forall(
                    vec!["x".to_string()],
                    Formula::eq(f_at(x()), t.body(&x())),
                ),
            )
        }
        Variant::Second => {
            let (lhs, rhs) = second_variant_identity(t, "x");
            Formula::forall(vec!["x".to_string()], Formula::eq(lhs, rhs))
        }
    }
}

/// The second-variant identity with `var` as the quantified name.
fn second_variant_identity(t: Template, var: &str) -> (Expression, Expression) {
    let x = Expression::var(var);
    let fx = f_at(x.clone());
    match t {
        Template::Constant => (fx, f_of_int(0)),
        Template::MonomialLinear => (fx, Expression::Product(vec![f_of_int(1), x])),
        Template::MonomialQuadratic => (
            fx,
            Expression::Product(vec![f_of_int(1), Expression::pow(x, 2)]),
        ),
        Template::Linear => (
            fx,
            Expression::Sum(vec![
                Expression::Product(vec![f_of_int(1).minus(f_of_int(0)), x]),
                f_of_int(0),
            ]),
        ),
        Template::Quadratic => {
            let two = Expression::int(2);
            let lhs = Expression::Product(vec![two.clone(), fx]);
            let x2_coeff = Expression::Sum(vec![f_of_int(1), f_of_int(-1)])
                .minus(Expression::Product(vec![two.clone(), f_of_int(0)]));
            let x_coeff = f_of_int(1).minus(f_of_int(-1));
            let rhs = Expression::Sum(vec![
                Expression::Product(vec![x2_coeff, Expression::pow(x.clone(), 2)]),
                Expression::Product(vec![x_coeff, x]),
                Expression::Product(vec![two, f_of_int(0)]),
            ]);
            (lhs, rhs)
        }
    }
}

/// The negation of the membership formula. The second variant is put in
/// prenex form with a fresh witness variable; the first keeps its top-level
/// negation.
pub fn negated_membership(t: Template, variant: Variant, avoid: &[String]) -> Formula {
    match variant {
        Variant::First => Formula::not(membership_formula(t, variant)),
        Variant::Second => {
            let witness = fresh_name("w", avoid);
            let (lhs, rhs) = second_variant_identity(t, &witness);
            Formula::exists(vec![witness], Formula::not(Formula::eq(lhs, rhs)))
        }
    }
}

fn fresh_name(base: &str, avoid: &[String]) -> String {
    if !avoid.iter().any(|n| n == base) {
        return base.to_string();
    }
    for i in 0.. {
        let candidate = format!("{base}{i}");
        if !avoid.iter().any(|n| n == &candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Builds the obligation `problem assertions and not(membership)`. Its
/// unsatisfiability proves all solutions fit the template.
pub fn verification_obligation(p: &Problem, t: Template, variant: Variant) -> VerificationObligation {
    let mut conjuncts: Vec<Formula> = p
        .equations
        .iter()
        .map(|eq| {
            Formula::forall(
                eq.vars.clone(),
                Formula::eq(eq.lhs.clone(), eq.rhs.clone()),
            )
        })
        .collect();
    for marker in &p.side_conditions {
        if let Some(f) = crate::formula::side_condition_formula(marker) {
            conjuncts.push(f);
        }
    }
    let mut avoid: Vec<String> = Vec::new();
    for eq in &p.equations {
        avoid.extend(eq.vars.iter().cloned());
    }
    conjuncts.push(negated_membership(t, variant, &avoid));
    VerificationObligation {
        problem: p.name.clone(),
        template: t,
        variant,
        formula: Formula::And(conjuncts),
    }
}

/// The membership identity induced by a solved-form disjunct:
/// `forall x. f(x) = body`, wrapped in existential quantifiers for the
/// disjunct's free coefficients.
pub fn assignment_identity(t: Template, assignment: &Assignment) -> Formula {
    let body = t.solution_body("x", assignment);
    let base = Formula::forall(
        vec!["x".to_string()],
        Formula::eq(f_at(Expression::var("x")), body),
    );
    let free: Vec<String> = assignment.free().iter().cloned().collect();
    Formula::exists(free, base)
}

/// Exact checking helper used by invariants: evaluates `e` under `env`,
/// interpreting `f` as the template body with coefficient values drawn
/// from the same environment.
pub fn eval_with_template(
    e: &Expression,
    t: Template,
    env: &BTreeMap<String, Rational>,
) -> Rational {
    match e {
        Expression::Const(r) => r.clone(),
        Expression::Var(n) | Expression::Coeff(n) => {
            env.get(n).unwrap_or_else(|| panic!("no value for {n}")).clone()
        }
        Expression::Sum(cs) => cs
            .iter()
            .map(|c| eval_with_template(c, t, env))
            .fold(Rational::zero(), |acc, v| acc + v),
        Expression::Product(cs) => cs
            .iter()
            .map(|c| eval_with_template(c, t, env))
            .fold(Rational::one(), |acc, v| acc * v),
        Expression::Neg(c) => -eval_with_template(c, t, env),
        Expression::Pow(c, n) => eval_with_template(c, t, env).pow(*n),
        Expression::Apply(arg) => {
            let v = eval_with_template(arg, t, env);
            let a = || env.get("a").expect("template coefficient a").clone();
            match t {
                Template::Constant => env.get("c").expect("template coefficient c").clone(),
                Template::MonomialLinear => a() * v,
                Template::MonomialQuadratic => a() * v.pow(2),
                Template::Linear => {
                    a() * v + env.get("b").expect("template coefficient b")
                }
                Template::Quadratic => {
                    a() * v.pow(2)
                        + &(env.get("b").expect("template coefficient b").clone() * v)
                        + env.get("c").expect("template coefficient c")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::problem::corpus_problem;

    fn a() -> Polynomial {
        Polynomial::coeff_symbol("a")
    }

    fn b() -> Polynomial {
        Polynomial::coeff_symbol("b")
    }

    fn x() -> Polynomial {
        Polynomial::var("x")
    }

    fn y() -> Polynomial {
        Polynomial::var("y")
    }

    #[test]
    fn runner_order_is_smallest_first() {
        assert!(Template::Constant < Template::MonomialLinear);
        assert!(Template::MonomialLinear < Template::MonomialQuadratic);
        assert!(Template::MonomialQuadratic < Template::Linear);
        assert!(Template::Linear < Template::Quadratic);
    }

    #[test]
    fn inline_eq1_linear() {
        // f(x+y) = x f(y) + y f(x) under a*x + b:
        // a*x + a*y + b - 2a*xy - b*x - b*y
        let p = corpus_problem("Eq1").unwrap();
        let polys = inline(&p, Template::Linear).unwrap();
        assert_eq!(polys.len(), 1);
        let want = &(&(&(&(&(&a() * &x()) + &(&a() * &y())) + &b())
            - &(&Polynomial::int(2) * &(&a() * &(&x() * &y()))))
            - &(&b() * &x()))
            - &(&b() * &y());
        assert_eq!(polys[0], want);
    }

    #[test]
    fn inline_u24_constant_reduces_to_c() {
        let p = corpus_problem("U24").unwrap();
        let polys = inline(&p, Template::Constant).unwrap();
        assert_eq!(polys, vec![Polynomial::coeff_symbol("c")]);
    }

    #[test]
    fn inline_c12_linear_matches_hand_expansion() {
        // a*x^2 + a^2*y + a*b + b - y - a^2*x^2 - 2ab*x - b^2
        let p = corpus_problem("C12").unwrap();
        let polys = inline(&p, Template::Linear).unwrap();
        let want = &(&(&(&(&(&(&a() * &x().pow(2)) + &(&a().pow(2) * &y()))
            + &(&a() * &b()))
            + &b())
            - &y())
            - &(&a().pow(2) * &x().pow(2)))
            - &(&(&Polynomial::int(2) * &(&a() * &b())) * &x());
        let want = &want - &b().pow(2);
        assert_eq!(polys[0], want);
    }

    #[test]
    fn inline_rejects_unsupported_problems() {
        let p = corpus_problem("U2").unwrap();
        assert!(inline(&p, Template::Linear).is_err());
    }

    #[test]
    fn inline_removes_nested_applications() {
        for p in crate::problem::load_corpus().unwrap() {
            if classify_fragment(&p) != Fragment::Equational {
                continue;
            }
            for t in Template::ALL {
                for eq in &p.equations {
                    let e = inline_expression(&eq.difference(), t);
                    assert!(!e.contains_apply(), "{} under {}", p.name, t.tag());
                }
            }
        }
    }

    #[test]
    fn membership_formulas_second_variant() {
        assert_eq!(
            membership_formula(Template::Linear, Variant::Second).to_string(),
            "forall x . (f(x) = (f(1) - f(0))*x + f(0))"
        );
        assert_eq!(
            membership_formula(Template::MonomialQuadratic, Variant::Second).to_string(),
            "forall x . (f(x) = f(1)*x^2)"
        );
        assert_eq!(
            membership_formula(Template::Constant, Variant::Second).to_string(),
            "forall x . (f(x) = f(0))"
        );
        assert_eq!(
            membership_formula(Template::Quadratic, Variant::Second).to_string(),
            "forall x . (2*f(x) = ((f(1) + f(-1)) - 2*f(0))*x^2 + (f(1) - f(-1))*x + 2*f(0))"
        );
    }

    #[test]
    fn membership_formulas_first_variant() {
        assert_eq!(
            membership_formula(Template::Constant, Variant::First).to_string(),
            "exists c . (forall x . (f(x) = c))"
        );
        assert_eq!(
            membership_formula(Template::Linear, Variant::First).to_string(),
            "exists a b . (forall x . (f(x) = a*x + b))"
        );
    }

    #[test]
    fn obligations_conjoin_problem_and_negated_membership() {
        let p = corpus_problem("Eq1").unwrap();
        let ob = verification_obligation(&p, Template::Linear, Variant::First);
        let text = ob.formula.to_string();
        assert!(text.contains("forall x y . (f(x + y) = x*f(y) + y*f(x))"));
        assert!(text.contains("not (exists a b . (forall x . (f(x) = a*x + b)))"));

        let u91 = corpus_problem("U91").unwrap();
        let ob2 = verification_obligation(&u91, Template::Linear, Variant::Second);
        assert!(ob2
            .formula
            .to_string()
            .contains("exists w . (f(w) != (f(1) - f(0))*w + f(0))"));

        let ob3 = verification_obligation(&p, Template::Constant, Variant::Second);
        assert!(ob3.formula.to_string().contains("exists w . (f(w) != f(0))"));
    }

    #[test]
    fn witness_name_avoids_problem_variables() {
        let text = "problem t\nassert forall w x . f(w) + f(x) = f(w+x)\n";
        let p = crate::expr::parse_problem(text).unwrap();
        let ob = verification_obligation(&p, Template::Constant, Variant::Second);
        assert!(ob.formula.to_string().contains("exists w0 ."));
    }

    #[test]
    fn template_subsumption_is_symbolic() {
        // Inlining a smaller template's body into a larger template's
        // second-variant identity yields a polynomial identity.
        let pairs = [
            (Template::Constant, Template::Linear),
            (Template::Constant, Template::Quadratic),
            (Template::MonomialLinear, Template::Linear),
            (Template::MonomialLinear, Template::Quadratic),
            (Template::MonomialQuadratic, Template::Quadratic),
            (Template::Linear, Template::Quadratic),
        ];
        for (small, large) in pairs {
            let (lhs, rhs) = second_variant_identity(large, "x");
            let diff = inline_expression(&lhs.minus(rhs), small);
            let poly = to_polynomial(&diff).unwrap();
            assert!(
                poly.is_zero(),
                "{} should subsume {}",
                large.tag(),
                small.tag()
            );
        }
        // Constant membership does not imply monomial-linear membership.
        let (lhs, rhs) = second_variant_identity(Template::MonomialLinear, "x");
        let diff = inline_expression(&lhs.minus(rhs), Template::Constant);
        assert!(!to_polynomial(&diff).unwrap().is_zero());
    }

    #[test]
    fn inline_agrees_with_direct_evaluation() {
        let problems = ["Eq1", "U91", "C12", "U87"];
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Rational::from_int((seed >> 33) as i64 % 11 - 5)
        };
        for name in problems {
            let p = corpus_problem(name).unwrap();
            for t in [Template::Linear, Template::Quadratic] {
                let polys = inline(&p, t).unwrap();
                for _ in 0..25 {
                    let mut env = BTreeMap::new();
                    for eq in &p.equations {
                        for v in &eq.vars {
                            env.insert(v.clone(), next());
                        }
                    }
                    for c in t.coefficients() {
                        env.insert(c.to_string(), next());
                    }
                    for (eq, poly) in p.equations.iter().zip(&polys) {
                        let direct = eval_with_template(&eq.difference(), t, &env);
                        let via_poly = poly.eval(&env).unwrap();
                        assert_eq!(direct, via_poly, "{} under {}", name, t.tag());
                    }
                }
            }
        }
    }

    #[test]
    fn solution_bodies_fold_assigned_coefficients() {
        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(1));
        asg.assign("b", Rational::from_int(0));
        assert_eq!(
            Template::Linear.solution_body("x", &asg).to_string(),
            "x"
        );

        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(1));
        asg.assign("b", Rational::from_int(1));
        assert_eq!(
            Template::Linear.solution_body("x", &asg).to_string(),
            "x + 1"
        );

        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(0));
        asg.assign("b", Rational::from_int(0));
        assert_eq!(
            Template::Linear.solution_body("x", &asg).to_string(),
            "0"
        );

        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(1));
        assert_eq!(
            Template::MonomialQuadratic.solution_body("x", &asg).to_string(),
            "x^2"
        );

        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(1));
        asg.mark_free("b");
        assert_eq!(
            Template::Linear.solution_body("x", &asg).to_string(),
            "x + b"
        );

        let mut asg = Assignment::empty();
        asg.assign("a", Rational::from_int(-2));
        assert_eq!(
            Template::MonomialLinear.solution_body("x", &asg).to_string(),
            "-2*x"
        );
    }
}
