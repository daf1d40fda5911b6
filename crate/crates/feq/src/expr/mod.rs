//! Expression trees over exact rationals, the problem-file parser,
//! substitution and evaluation.
//!
//! Expressions are built from rational constants, problem variables,
//! coefficient symbols, sums, products, negation, integer powers and
//! applications of the single unknown function `f`. Subtraction is
//! represented as sum-with-negation; there is no division node.

mod parse;
mod rational;

pub use parse::{parse_problem, ParseError};
pub use rational::Rational;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A term over rationals, variables, coefficient symbols and `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    /// An exact rational constant.
    Const(Rational),
    /// A quantified problem variable such as `x`.
    Var(String),
    /// A template coefficient or solution parameter such as `a`.
    Coeff(String),
    /// A sum of two or more terms.
    Sum(Vec<Expression>),
    /// A product of two or more factors.
    Product(Vec<Expression>),
    /// Negation of a term.
    Neg(Box<Expression>),
    /// An integer power with exponent >= 1.
    Pow(Box<Expression>, u32),
    /// Application `f(arg)` of the unknown function.
    Apply(Box<Expression>),
}

/// Evaluation failure of [`Expression::eval`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// A variable or coefficient symbol had no value in the environment.
    /// This is how the postprocessor detects terms that cannot be evaluated.
    #[error("cannot evaluate: symbol `{0}` has no value")]
    Incomplete(String),
    /// The expression still applies the unknown function.
    #[error("cannot evaluate: expression applies the unknown function")]
    FunctionPresent,
}

impl Expression {
    pub fn int(n: i64) -> Expression {
        Expression::Const(Rational::from_int(n))
    }

    pub fn constant(r: Rational) -> Expression {
        Expression::Const(r)
    }

    pub fn var(name: &str) -> Expression {
        Expression::Var(name.to_owned())
    }

    pub fn coeff(name: &str) -> Expression {
        Expression::Coeff(name.to_owned())
    }

    /// Sum of `children`; the empty sum is 0 and a singleton is unwrapped.
    pub fn sum(mut children: Vec<Expression>) -> Expression {
        match children.len() {
            0 => Expression::int(0),
            1 => children.pop().unwrap(),
            _ => Expression::Sum(children),
        }
    }

    /// Product of `children`; the empty product is 1 and a singleton is unwrapped.
    pub fn product(mut children: Vec<Expression>) -> Expression {
        match children.len() {
            0 => Expression::int(1),
            1 => children.pop().unwrap(),
            _ => Expression::Product(children),
        }
    }

    // Constructor taking the operand, unlike std::ops::Neg on self.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expression) -> Expression {
        Expression::Neg(Box::new(e))
    }

    /// `e - other` as sum-with-negation.
    pub fn minus(self, other: Expression) -> Expression {
        Expression::Sum(vec![self, Expression::neg(other)])
    }

    /// Integer power; exponent 1 is unwrapped.
    pub fn pow(e: Expression, exp: u32) -> Expression {
        assert!(exp >= 1, "power exponents must be >= 1");
        if exp == 1 {
            e
        } else {
            Expression::Pow(Box::new(e), exp)
        }
    }

    /// `f(arg)`.
    pub fn apply(arg: Expression) -> Expression {
        Expression::Apply(Box::new(arg))
    }

    /// True if any `f(..)` application occurs in the term.
    pub fn contains_apply(&self) -> bool {
        match self {
            Expression::Const(_) | Expression::Var(_) | Expression::Coeff(_) => false,
            Expression::Sum(cs) | Expression::Product(cs) => cs.iter().any(|c| c.contains_apply()),
            Expression::Neg(c) | Expression::Pow(c, _) => c.contains_apply(),
            Expression::Apply(_) => true,
        }
    }

    /// Number of `f(..)` applications, counting nested ones.
    pub fn apply_count(&self) -> usize {
        match self {
            Expression::Const(_) | Expression::Var(_) | Expression::Coeff(_) => 0,
            Expression::Sum(cs) | Expression::Product(cs) => {
                cs.iter().map(|c| c.apply_count()).sum()
            }
            Expression::Neg(c) | Expression::Pow(c, _) => c.apply_count(),
            Expression::Apply(c) => 1 + c.apply_count(),
        }
    }

    /// Names of all problem variables occurring in the term.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expression::Var(n) = e {
                out.insert(n.clone());
            }
        });
        out
    }

    /// Names of all coefficient symbols occurring in the term.
    pub fn coefficients(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expression::Coeff(n) = e {
                out.insert(n.clone());
            }
        });
        out
    }

    fn walk(&self, visit: &mut impl FnMut(&Expression)) {
        visit(self);
        match self {
            Expression::Const(_) | Expression::Var(_) | Expression::Coeff(_) => {}
            Expression::Sum(cs) | Expression::Product(cs) => {
                for c in cs {
                    c.walk(visit);
                }
            }
            Expression::Neg(c) | Expression::Pow(c, _) => c.walk(visit),
            Expression::Apply(c) => c.walk(visit),
        }
    }

    /// Simultaneous replacement of variables by terms. Nodes outside the
    /// binding are unchanged; there are no binders inside expressions, so
    /// the replacement is capture-free by construction.
    pub fn substitute(&self, binding: &BTreeMap<String, Expression>) -> Expression {
        match self {
            Expression::Var(n) => match binding.get(n) {
                Some(e) => e.clone(),
                None => self.clone(),
            },
            Expression::Const(_) | Expression::Coeff(_) => self.clone(),
            Expression::Sum(cs) => {
                Expression::Sum(cs.iter().map(|c| c.substitute(binding)).collect())
            }
            Expression::Product(cs) => {
                Expression::Product(cs.iter().map(|c| c.substitute(binding)).collect())
            }
            Expression::Neg(c) => Expression::neg(c.substitute(binding)),
            Expression::Pow(c, n) => Expression::Pow(Box::new(c.substitute(binding)), *n),
            Expression::Apply(c) => Expression::apply(c.substitute(binding)),
        }
    }

    /// Exact evaluation under `env`, which must bind every variable and
    /// coefficient symbol of the term. The term must not apply `f`.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Rational, EvalError> {
        match self {
            Expression::Const(r) => Ok(r.clone()),
            Expression::Var(n) | Expression::Coeff(n) => env
                .get(n)
                .cloned()
                .ok_or_else(|| EvalError::Incomplete(n.clone())),
            Expression::Sum(cs) => {
                let mut acc = Rational::zero();
                for c in cs {
                    acc = acc + c.eval(env)?;
                }
                Ok(acc)
            }
            Expression::Product(cs) => {
                let mut acc = Rational::one();
                for c in cs {
                    acc = acc * c.eval(env)?;
                }
                Ok(acc)
            }
            Expression::Neg(c) => Ok(-c.eval(env)?),
            Expression::Pow(c, n) => Ok(c.eval(env)?.pow(*n)),
            Expression::Apply(_) => Err(EvalError::FunctionPresent),
        }
    }
}

/// A universally quantified equation `forall vars . lhs = rhs`.
///
/// Every variable occurring in `lhs` or `rhs` appears in `vars`, so the
/// sentence is closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expression,
    pub rhs: Expression,
    pub vars: Vec<String>,
}

impl Equation {
    pub fn new(lhs: Expression, rhs: Expression, vars: Vec<String>) -> Equation {
        Equation { lhs, rhs, vars }
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> Expression {
        self.lhs.clone().minus(self.rhs.clone())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            write!(f, "forall {} . ", self.vars.join(" "))?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

// Printing precedence levels: 1 sum, 2 sum operand, 3 product operand,
// 4 power base / negation operand.
impl Expression {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Expression::Const(r) => {
                if r.is_negative() && prec >= 2 {
                    write!(f, "({})", r)
                } else {
                    write!(f, "{}", r)
                }
            }
            Expression::Var(n) | Expression::Coeff(n) => write!(f, "{}", n),
            Expression::Sum(cs) => {
                let parens = prec >= 2;
                if parens {
                    write!(f, "(")?;
                }
                for (i, c) in cs.iter().enumerate() {
                    if i == 0 {
                        match c {
                            Expression::Const(r) if r.is_negative() => c.fmt_prec(f, 1)?,
                            _ => c.fmt_prec(f, 2)?,
                        }
                    } else {
                        match c {
                            Expression::Neg(inner) => {
                                write!(f, " - ")?;
                                inner.fmt_prec(f, 2)?;
                            }
                            Expression::Const(r) if r.is_negative() => {
                                write!(f, " - {}", -r.clone())?;
                            }
                            _ => {
                                write!(f, " + ")?;
                                c.fmt_prec(f, 2)?;
                            }
                        }
                    }
                }
                if parens {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expression::Product(cs) => {
                let parens = prec >= 3;
                if parens {
                    write!(f, "(")?;
                }
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    // A leading negation or negative constant needs no
                    // parentheses: `-2*x` reparses to an equal tree.
                    let child_prec = if i == 0 { 3 } else { 4 };
                    match c {
                        Expression::Neg(_) if i == 0 => c.fmt_prec(f, 2)?,
                        Expression::Const(r) if i == 0 && r.is_negative() => {
                            c.fmt_prec(f, 1)?
                        }
                        _ => c.fmt_prec(f, child_prec)?,
                    }
                }
                if parens {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expression::Neg(c) => {
                let parens = prec >= 4;
                if parens {
                    write!(f, "(")?;
                }
                write!(f, "-")?;
                c.fmt_prec(f, 4)?;
                if parens {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Expression::Pow(base, exp) => {
                base.fmt_prec(f, 4)?;
                write!(f, "^{}", exp)
            }
            Expression::Apply(arg) => {
                write!(f, "f(")?;
                arg.fmt_prec(f, 1)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 1)
    }
}
