//! Postprocessor turning quantifier-free coefficient constraints into
//! solved forms: disjunctions of assignments `c = v`, possibly with free
//! coefficients.
//!
//! The procedure works on a triple of lists: pending formulas, collected
//! equations and collected ordering literals. Conjunctions splice into the
//! pending list, disjunctions branch the whole state, equations are
//! processed head-first through a fixed case analysis, and the ordering
//! literals are evaluated at the end under the accumulated assignment.
//! Anything outside the supported cases is an explicit failure rather
//! than an approximation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::expr::{Expression, Rational};
use crate::formula::{CmpOp, Formula};
use crate::poly::{to_polynomial, Monomial, Polynomial, Symbol};
use crate::qe::CoefficientConstraint;

/// A literal equating a template coefficient with a rational value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AssignmentAtom {
    pub coefficient: String,
    pub value: Rational,
}

/// A conjunction of assignment atoms plus coefficients known to be free.
/// Coefficients in neither list are still unresolved; a finished disjunct
/// has none.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Assignment {
    atoms: Vec<AssignmentAtom>,
    free: BTreeSet<String>,
}

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment::default()
    }

    pub fn atoms(&self) -> &[AssignmentAtom] {
        &self.atoms
    }

    pub fn free(&self) -> &BTreeSet<String> {
        &self.free
    }

    pub fn get(&self, coefficient: &str) -> Option<&Rational> {
        self.atoms
            .iter()
            .find(|a| a.coefficient == coefficient)
            .map(|a| &a.value)
    }

    pub fn assign(&mut self, coefficient: &str, value: Rational) {
        debug_assert!(
            self.get(coefficient).is_none() && !self.free.contains(coefficient),
            "coefficient `{coefficient}` resolved twice"
        );
        let atom = AssignmentAtom {
            coefficient: coefficient.to_string(),
            value,
        };
        let at = self
            .atoms
            .partition_point(|a| a.coefficient < atom.coefficient);
        self.atoms.insert(at, atom);
    }

    pub fn mark_free(&mut self, coefficient: &str) {
        debug_assert!(self.get(coefficient).is_none());
        self.free.insert(coefficient.to_string());
    }

    /// Assigned coefficients as polynomial substitution values.
    pub fn symbol_values(&self) -> BTreeMap<Symbol, Rational> {
        self.atoms
            .iter()
            .map(|a| (Symbol::coeff(&a.coefficient), a.value.clone()))
            .collect()
    }

    /// Assigned coefficients as an evaluation environment.
    pub fn env(&self) -> BTreeMap<String, Rational> {
        self.atoms
            .iter()
            .map(|a| (a.coefficient.clone(), a.value.clone()))
            .collect()
    }

    /// True when a complete valuation of the coefficients matches this
    /// disjunct: atoms agree exactly and free coefficients are arbitrary.
    pub fn admits(&self, valuation: &BTreeMap<String, Rational>) -> bool {
        self.atoms
            .iter()
            .all(|a| valuation.get(&a.coefficient) == Some(&a.value))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(&str, String)> = self
            .atoms
            .iter()
            .map(|a| (a.coefficient.as_str(), format!("{} = {}", a.coefficient, a.value)))
            .collect();
        parts.extend(self.free.iter().map(|c| (c.as_str(), format!("{} ∈ ℝ", c))));
        parts.sort_by_key(|(name, _)| *name);
        let rendered: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
        write!(f, "{{{}}}", rendered.join(", "))
    }
}

/// A disjunction of assignments describing all solution functions within
/// a template; the empty disjunction is falsity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolvedForm {
    disjuncts: Vec<Assignment>,
}

impl SolvedForm {
    pub fn bottom() -> SolvedForm {
        SolvedForm::default()
    }

    /// Sorts and deduplicates, giving a canonical disjunct order.
    pub fn from_disjuncts(mut disjuncts: Vec<Assignment>) -> SolvedForm {
        disjuncts.sort();
        disjuncts.dedup();
        SolvedForm { disjuncts }
    }

    pub fn is_bottom(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn disjuncts(&self) -> &[Assignment] {
        &self.disjuncts
    }

    /// Whether a complete valuation of the coefficients satisfies some
    /// disjunct.
    pub fn satisfied_by(&self, valuation: &BTreeMap<String, Rational>) -> bool {
        self.disjuncts.iter().any(|d| d.admits(valuation))
    }
}

impl fmt::Display for SolvedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disjuncts.is_empty() {
            return write!(f, "⊥");
        }
        let parts: Vec<String> = self.disjuncts.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(" ∨ "))
    }
}

/// Why the postprocessor failed to produce a solved form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoSolvedForm {
    #[error("unsupported formula shape: {0}")]
    UnsupportedFormula(String),
    #[error("no solved-form case applies to `{0} = 0`")]
    UnsupportedEquation(String),
    #[error("`{0} = 0` has no rational root")]
    NoRationalRoot(String),
    #[error("ordering literal `{0}` cannot be evaluated under the assignment")]
    UnevaluatedLiteral(String),
    #[error("underdetermined linear pair `{0} = 0`")]
    UnderdeterminedPair(String),
    #[error("postprocessor input mentions problem variable `{0}`")]
    VariablePresent(String),
    #[error("postprocessor input applies the unknown function")]
    FunctionPresent,
}

/// Working state: pending formulas, collected equations (each `p = 0`),
/// ordering literals (each `p op 0`) and the assignment built so far.
/// Formula processing strictly shrinks the pending list, then equation
/// processing strictly shrinks the equation list.
#[derive(Debug, Clone)]
pub struct PostState {
    pending: VecDeque<Formula>,
    equations: VecDeque<Polynomial>,
    literals: Vec<(CmpOp, Polynomial)>,
    assignment: Assignment,
    coefficients: Vec<String>,
}

impl PostState {
    pub fn from_formulas(formulas: Vec<Formula>, coefficients: &[&str]) -> PostState {
        PostState {
            pending: formulas.into(),
            equations: VecDeque::new(),
            literals: Vec::new(),
            assignment: Assignment::empty(),
            coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_equations(equations: Vec<Polynomial>, coefficients: &[&str]) -> PostState {
        PostState {
            pending: VecDeque::new(),
            equations: equations.into(),
            literals: Vec::new(),
            assignment: Assignment::empty(),
            coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn equations(&self) -> impl Iterator<Item = &Polynomial> {
        self.equations.iter()
    }
}

/// Result of one equation-processing step.
#[derive(Debug)]
pub enum Step {
    /// The head equation was consumed; processing continues.
    Continue(PostState),
    /// The head equation split the state, one successor per root.
    Branch(Vec<PostState>),
    /// The head equation is unsatisfiable under the assignment.
    Bottom,
}

/// Converts a list of quantifier-free formulas over the template
/// coefficients into an equivalent solved form, or fails.
pub fn to_solved_form(
    formulas: Vec<Formula>,
    coefficients: &[&str],
) -> Result<SolvedForm, NoSolvedForm> {
    process(PostState::from_formulas(formulas, coefficients))
}

/// Input adapter for the quantifier-elimination kernel: each polynomial
/// `p` of the constraint is processed as the equation `p = 0`.
pub fn solve_constraint(
    constraint: &CoefficientConstraint,
    coefficients: &[&str],
) -> Result<SolvedForm, NoSolvedForm> {
    process(PostState::from_equations(
        constraint.equations().to_vec(),
        coefficients,
    ))
}

fn process(mut state: PostState) -> Result<SolvedForm, NoSolvedForm> {
    while let Some(head) = state.pending.pop_front() {
        match head {
            Formula::And(fs) => {
                for f in fs.into_iter().rev() {
                    state.pending.push_front(f);
                }
            }
            Formula::Or(fs) => {
                // One recursive call per disjunct over a copy of the whole
                // remaining state; the results are combined disjunctively
                // and any failing branch fails the call.
                let mut disjuncts = Vec::new();
                for f in fs {
                    let mut branch = state.clone();
                    branch.pending.push_front(f);
                    disjuncts.extend(process(branch)?.disjuncts);
                }
                return Ok(SolvedForm::from_disjuncts(disjuncts));
            }
            Formula::Eq(l, r) => {
                let p = sides_to_polynomial(&l, &r)?;
                state.equations.push_back(p);
            }
            Formula::Cmp(op, l, r) => {
                let p = sides_to_polynomial(&l, &r)?;
                state.literals.push((op, p));
            }
            other => {
                return Err(NoSolvedForm::UnsupportedFormula(other.to_string()));
            }
        }
    }
    drain_equations(state)
}

fn drain_equations(mut state: PostState) -> Result<SolvedForm, NoSolvedForm> {
    while !state.equations.is_empty() {
        match step_equation(state)? {
            Step::Continue(next) => state = next,
            Step::Bottom => return Ok(SolvedForm::bottom()),
            Step::Branch(branches) => {
                let mut disjuncts = Vec::new();
                for b in branches {
                    disjuncts.extend(drain_equations(b)?.disjuncts);
                }
                return Ok(SolvedForm::from_disjuncts(disjuncts));
            }
        }
    }
    finalize(state)
}

/// Applies exactly one case of the equation analysis to the head of the
/// equation list, in order: constant check, single-coefficient solving,
/// then the two-coefficient linear pair.
pub fn step_equation(mut state: PostState) -> Result<Step, NoSolvedForm> {
    let head = state
        .equations
        .pop_front()
        .expect("step_equation needs a nonempty equation list");
    let p = head.substituted(&state.assignment.symbol_values());
    let symbols: Vec<Symbol> = p.symbols().into_iter().collect();

    match symbols.len() {
        // Case 1: both sides evaluate; drop on equality, bottom otherwise.
        0 => {
            if p.as_constant().expect("symbol-free polynomial is constant").is_zero() {
                Ok(Step::Continue(state))
            } else {
                Ok(Step::Bottom)
            }
        }
        // Cases 2 and 3: one unresolved coefficient; solve exactly.
        1 => {
            let c = &symbols[0];
            match p.degree_in(c) {
                1 | 2 => {
                    let roots = solve_univariate(&p)?;
                    match roots.len() {
                        0 => Ok(Step::Bottom),
                        1 => {
                            state
                                .assignment
                                .assign(c.name(), roots.into_iter().next().unwrap());
                            Ok(Step::Continue(state))
                        }
                        _ => Ok(Step::Branch(
                            roots
                                .into_iter()
                                .map(|r| {
                                    let mut branch = state.clone();
                                    branch.assignment.assign(c.name(), r);
                                    branch
                                })
                                .collect(),
                        )),
                    }
                }
                _ => Err(NoSolvedForm::UnsupportedEquation(p.to_string())),
            }
        }
        // Case 4: the head has the shape c + s1*d = t with a later partner
        // equation c + d = t'. The unit coefficient is required on the
        // canonically first symbol; 2c + d = 2 does not match.
        2 => case_linear_pair(state, p, &symbols[0], &symbols[1]),
        _ => Err(NoSolvedForm::UnsupportedEquation(p.to_string())),
    }
}

fn case_linear_pair(
    mut state: PostState,
    p: Polynomial,
    c: &Symbol,
    d: &Symbol,
) -> Result<Step, NoSolvedForm> {
    let linear_in = |q: &Polynomial| {
        q.degree() == 1
            && q.degree_in(c) <= 1
            && q.degree_in(d) <= 1
    };
    if !linear_in(&p) || !p.coefficient_of(&Monomial::symbol(c.clone())).is_one() {
        return Err(NoSolvedForm::UnsupportedEquation(p.to_string()));
    }
    let s1 = p.coefficient_of(&Monomial::symbol(d.clone()));
    let t = -p.constant_term();

    let values = state.assignment.symbol_values();
    let partner = state.equations.iter().enumerate().find_map(|(idx, q)| {
        let q = q.substituted(&values);
        let same_symbols = q.symbols().into_iter().collect::<Vec<_>>() == vec![c.clone(), d.clone()];
        if same_symbols
            && linear_in(&q)
            && q.coefficient_of(&Monomial::symbol(c.clone())).is_one()
            && q.coefficient_of(&Monomial::symbol(d.clone())).is_one()
        {
            Some((idx, -q.constant_term()))
        } else {
            None
        }
    });

    match partner {
        Some((idx, t_prime)) => {
            if s1.is_one() {
                // c + d = t alongside c + d = t': inconsistent or redundant.
                return if t != t_prime {
                    Ok(Step::Bottom)
                } else {
                    Err(NoSolvedForm::UnderdeterminedPair(p.to_string()))
                };
            }
            state.equations.remove(idx);
            let one = Rational::one();
            let d_value = (t.clone() - t_prime.clone()) / (s1 - one);
            let c_value = t_prime - d_value.clone();
            state.assignment.assign(c.name(), c_value);
            state.assignment.assign(d.name(), d_value);
            Ok(Step::Continue(state))
        }
        None => Err(NoSolvedForm::UnsupportedEquation(p.to_string())),
    }
}

/// Exact real roots of a univariate polynomial of degree 1 or 2 in one
/// unresolved coefficient. Degree-2 roots come from the discriminant and
/// are reported only when rational; an irrational root is a failure, not
/// an approximation. No real roots yields the empty list.
pub fn solve_univariate(p: &Polynomial) -> Result<Vec<Rational>, NoSolvedForm> {
    let symbols = p.symbols();
    assert_eq!(symbols.len(), 1, "solve_univariate needs one symbol");
    let s = symbols.into_iter().next().unwrap();
    let a2 = p.coefficient_of(&Monomial::symbol(s.clone()).pow(2));
    let a1 = p.coefficient_of(&Monomial::symbol(s.clone()));
    let a0 = p.constant_term();

    if a2.is_zero() {
        debug_assert!(!a1.is_zero(), "degree-1 polynomial has a linear term");
        return Ok(vec![-a0 / a1]);
    }

    let four = Rational::from_int(4);
    let discriminant = a1.pow(2) - four * a2.clone() * a0;
    if discriminant.is_negative() {
        return Ok(vec![]);
    }
    let root = discriminant
        .sqrt_exact()
        .ok_or_else(|| NoSolvedForm::NoRationalRoot(p.to_string()))?;
    let two_a2 = Rational::from_int(2) * a2;
    if root.is_zero() {
        return Ok(vec![-a1 / two_a2]);
    }
    let r1 = (-a1.clone() - root.clone()) / two_a2.clone();
    let r2 = (-a1 + root) / two_a2;
    let mut roots = vec![r1, r2];
    roots.sort();
    Ok(roots)
}

/// Evaluates the collected ordering literals under the assignment. Every
/// literal must evaluate; a literal still mentioning an unresolved or free
/// coefficient is a failure. All-true keeps the disjunct with the leftover
/// coefficients marked free; any false literal yields bottom.
pub fn finalize(state: PostState) -> Result<SolvedForm, NoSolvedForm> {
    debug_assert!(state.pending.is_empty() && state.equations.is_empty());
    let values = state.assignment.symbol_values();
    for (op, p) in &state.literals {
        let evaluated = p.substituted(&values);
        match evaluated.as_constant() {
            Some(v) => {
                if !op.holds(&v, &Rational::zero()) {
                    return Ok(SolvedForm::bottom());
                }
            }
            None => {
                return Err(NoSolvedForm::UnevaluatedLiteral(format!(
                    "{} {} 0",
                    p,
                    op.symbol()
                )));
            }
        }
    }
    let mut assignment = state.assignment;
    for c in &state.coefficients {
        if assignment.get(c).is_none() {
            assignment.mark_free(c);
        }
    }
    Ok(SolvedForm::from_disjuncts(vec![assignment]))
}

fn sides_to_polynomial(l: &Expression, r: &Expression) -> Result<Polynomial, NoSolvedForm> {
    let pl = to_polynomial(l).map_err(|_| NoSolvedForm::FunctionPresent)?;
    let pr = to_polynomial(r).map_err(|_| NoSolvedForm::FunctionPresent)?;
    let p = &pl - &pr;
    if let Some(v) = p.symbols().iter().find(|s| s.is_var()) {
        return Err(NoSolvedForm::VariablePresent(v.name().to_string()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn a() -> Polynomial {
        Polynomial::coeff_symbol("a")
    }

    fn b() -> Polynomial {
        Polynomial::coeff_symbol("b")
    }

    fn c() -> Polynomial {
        Polynomial::coeff_symbol("c")
    }

    fn d() -> Polynomial {
        Polynomial::coeff_symbol("d")
    }

    fn assignment(pairs: &[(&str, i64)], free: &[&str]) -> Assignment {
        let mut asg = Assignment::empty();
        for (n, v) in pairs {
            asg.assign(n, Rational::from_int(*v));
        }
        for f in free {
            asg.mark_free(f);
        }
        asg
    }

    fn eq(l: Expression, r: Expression) -> Formula {
        Formula::Eq(l, r)
    }

    fn coeff(n: &str) -> Expression {
        Expression::coeff(n)
    }

    fn int(n: i64) -> Expression {
        Expression::int(n)
    }

    #[test]
    fn conjunction_of_assignment_and_branching() {
        // [a = 1, b = 0 or b = 1] -> {a=1, b=0} ∨ {a=1, b=1}
        let formulas = vec![
            eq(coeff("a"), int(1)),
            Formula::Or(vec![eq(coeff("b"), int(0)), eq(coeff("b"), int(1))]),
        ];
        let sf = to_solved_form(formulas, &["a", "b"]).unwrap();
        assert_eq!(
            sf.disjuncts(),
            &[
                assignment(&[("a", 1), ("b", 0)], &[]),
                assignment(&[("a", 1), ("b", 1)], &[]),
            ]
        );
    }

    #[test]
    fn verbatim_qe_output_with_ordering_literals() {
        // -1 + a = 0 and b >= 0 and -1 + b <= 0 and (b = 0 or -1 + b = 0)
        let minus_one_plus = |n: &str| Expression::Sum(vec![int(-1), coeff(n)]);
        let formulas = vec![
            eq(minus_one_plus("a"), int(0)),
            Formula::Cmp(CmpOp::Ge, coeff("b"), int(0)),
            Formula::Cmp(CmpOp::Le, minus_one_plus("b"), int(0)),
            Formula::Or(vec![
                eq(coeff("b"), int(0)),
                eq(minus_one_plus("b"), int(0)),
            ]),
        ];
        let sf = to_solved_form(formulas, &["a", "b"]).unwrap();
        assert_eq!(
            sf.disjuncts(),
            &[
                assignment(&[("a", 1), ("b", 0)], &[]),
                assignment(&[("a", 1), ("b", 1)], &[]),
            ]
        );
    }

    #[test]
    fn unconstrained_coefficient_is_free() {
        // [a - 1 = 0] over {a, b} -> {a = 1, b free}
        let formulas = vec![eq(
            Expression::Sum(vec![coeff("a"), Expression::neg(int(1))]),
            int(0),
        )];
        let sf = to_solved_form(formulas, &["a", "b"]).unwrap();
        assert_eq!(sf.disjuncts(), &[assignment(&[("a", 1)], &["b"])]);
        assert_eq!(sf.to_string(), "{a = 1, b ∈ ℝ}");
    }

    #[test]
    fn cubic_fails() {
        let formulas = vec![eq(Expression::pow(coeff("c"), 3), int(1))];
        let err = to_solved_form(formulas, &["c"]).unwrap_err();
        assert!(matches!(err, NoSolvedForm::UnsupportedEquation(_)));
    }

    #[test]
    fn non_unit_linear_pair_fails() {
        // 2c + d = 2 and c + d = 1: the head equation does not have the
        // required unit coefficient on c, so no case applies.
        let formulas = vec![
            eq(
                Expression::Sum(vec![
                    Expression::Product(vec![int(2), coeff("c")]),
                    coeff("d"),
                ]),
                int(2),
            ),
            eq(Expression::Sum(vec![coeff("c"), coeff("d")]), int(1)),
        ];
        let err = to_solved_form(formulas, &["c", "d"]).unwrap_err();
        assert!(matches!(err, NoSolvedForm::UnsupportedEquation(_)));
    }

    #[test]
    fn square_root_branching() {
        // c^2 = 1 -> {c = -1} ∨ {c = 1}
        let formulas = vec![eq(Expression::pow(coeff("c"), 2), int(1))];
        let sf = to_solved_form(formulas, &["c"]).unwrap();
        assert_eq!(
            sf.disjuncts(),
            &[
                assignment(&[("c", -1)], &[]),
                assignment(&[("c", 1)], &[]),
            ]
        );
    }

    #[test]
    fn step_assigns_plain_coefficient() {
        // head c = 3
        let state = PostState::from_equations(vec![&c() - &Polynomial::int(3)], &["c"]);
        match step_equation(state).unwrap() {
            Step::Continue(s) => {
                assert_eq!(s.assignment().get("c"), Some(&Rational::from_int(3)));
            }
            other => panic!("expected continue, got {other:?}"),
        }
    }

    #[test]
    fn step_solves_shifted_coefficient() {
        // head 1 + c = 0 -> c = -1
        let state = PostState::from_equations(vec![&c() + &Polynomial::one()], &["c"]);
        match step_equation(state).unwrap() {
            Step::Continue(s) => {
                assert_eq!(s.assignment().get("c"), Some(&Rational::from_int(-1)));
            }
            other => panic!("expected continue, got {other:?}"),
        }
    }

    #[test]
    fn step_solves_linear_pair() {
        // c + 2d = 5 with partner c + d = 3 -> c = 1, d = 2
        let head = &(&c() + &(&Polynomial::int(2) * &d())) - &Polynomial::int(5);
        let partner = &(&c() + &d()) - &Polynomial::int(3);
        let state = PostState::from_equations(vec![head, partner], &["c", "d"]);
        match step_equation(state).unwrap() {
            Step::Continue(s) => {
                assert_eq!(s.assignment().get("c"), Some(&Rational::from_int(1)));
                assert_eq!(s.assignment().get("d"), Some(&Rational::from_int(2)));
                assert_eq!(s.equations().count(), 0, "partner equation consumed");
            }
            other => panic!("expected continue, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_unit_pair_is_bottom() {
        // c + d = 2 and c + d = 1 cannot both hold.
        let e1 = &(&c() + &d()) - &Polynomial::int(2);
        let e2 = &(&c() + &d()) - &Polynomial::int(1);
        let sf = solve_constraint(
            &CoefficientConstraint::new(vec![e1, e2]),
            &["c", "d"],
        );
        // Note: primitive-part normalization keeps both equations; the
        // pair is detected as inconsistent during processing.
        assert!(sf.unwrap().is_bottom());
    }

    #[test]
    fn solve_univariate_examples() {
        // b^2 - b -> [0, 1]
        let roots = solve_univariate(&(&b().pow(2) - &b())).unwrap();
        assert_eq!(roots, vec![Rational::zero(), Rational::one()]);

        // a^2 - 1 -> [-1, 1]
        let roots = solve_univariate(&(&a().pow(2) - &Polynomial::one())).unwrap();
        assert_eq!(roots, vec![Rational::from_int(-1), Rational::from_int(1)]);

        // c^2 - 2 has no rational root
        let err = solve_univariate(&(&c().pow(2) - &Polynomial::int(2))).unwrap_err();
        assert!(matches!(err, NoSolvedForm::NoRationalRoot(_)));

        // c^2 + 1 has no real root at all
        let roots = solve_univariate(&(&c().pow(2) + &Polynomial::one())).unwrap();
        assert!(roots.is_empty());

        // repeated root: c^2 - 2c + 1 -> [1]
        let p = &(&c().pow(2) - &(&Polynomial::int(2) * &c())) + &Polynomial::one();
        assert_eq!(solve_univariate(&p).unwrap(), vec![Rational::one()]);
    }

    #[test]
    fn finalize_checks_ordering_literals() {
        // b >= 0 and -1 + b <= 0 under {b = 1} holds.
        let mut state = PostState::from_equations(vec![], &["b"]);
        state.assignment.assign("b", Rational::one());
        state.literals.push((CmpOp::Ge, b()));
        state.literals.push((CmpOp::Le, &b() - &Polynomial::one()));
        let sf = finalize(state).unwrap();
        assert_eq!(sf.disjuncts().len(), 1);

        // b > 0 under {b = 0} is bottom.
        let mut state = PostState::from_equations(vec![], &["b"]);
        state.assignment.assign("b", Rational::zero());
        state.literals.push((CmpOp::Gt, b()));
        assert!(finalize(state).unwrap().is_bottom());

        // b >= 0 with b unresolved fails.
        let mut state = PostState::from_equations(vec![], &["b"]);
        state.literals.push((CmpOp::Ge, b()));
        let err = finalize(state).unwrap_err();
        assert!(matches!(err, NoSolvedForm::UnevaluatedLiteral(_)));
    }

    #[test]
    fn negation_is_unsupported() {
        let formulas = vec![Formula::not(eq(coeff("a"), int(1)))];
        let err = to_solved_form(formulas, &["a"]).unwrap_err();
        assert!(matches!(err, NoSolvedForm::UnsupportedFormula(_)));
    }

    #[test]
    fn determinism_and_canonical_disjunct_order() {
        let formulas = || {
            vec![Formula::Or(vec![
                eq(coeff("a"), int(1)),
                eq(coeff("a"), int(-1)),
            ])]
        };
        let s1 = to_solved_form(formulas(), &["a"]).unwrap();
        let s2 = to_solved_form(formulas(), &["a"]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.to_string(), "{a = -1} ∨ {a = 1}");
    }

    #[test]
    fn branch_union_covers_parent_satisfying_set() {
        // (c^2 = 1) and (c + d = 1): branching on c keeps exactly the
        // valuations that satisfy both inputs.
        let formulas = vec![
            eq(Expression::pow(coeff("c"), 2), int(1)),
            eq(Expression::Sum(vec![coeff("c"), coeff("d")]), int(1)),
        ];
        let sf = to_solved_form(formulas, &["c", "d"]).unwrap();
        assert_eq!(
            sf.disjuncts(),
            &[
                assignment(&[("c", -1), ("d", 2)], &[]),
                assignment(&[("c", 1), ("d", 0)], &[]),
            ]
        );
    }
}
