//! First-order formulas over expressions: equations, ordering atoms,
//! boolean connectives and real quantifiers.
//!
//! Verification obligations and the postprocessor input live here. The
//! postprocessor only consumes the quantifier-free fragment built from
//! equations, ordering atoms, conjunction and disjunction.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{EvalError, Expression, Rational};

/// Comparison operators for ordering atoms and parameter range constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Le,
    Ge,
    Lt,
    Gt,
}

impl CmpOp {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            CmpOp::Le => lhs <= rhs,
            CmpOp::Ge => lhs >= rhs,
            CmpOp::Lt => lhs < rhs,
            CmpOp::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// `lhs = rhs`.
    Eq(Expression, Expression),
    /// `lhs op rhs` for one of `<= >= < >`.
    Cmp(CmpOp, Expression, Expression),
    /// Conjunction; empty list is truth.
    And(Vec<Formula>),
    /// Disjunction; empty list is falsity.
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// Universal quantification over real-valued names.
    Forall(Vec<String>, Box<Formula>),
    /// Existential quantification over real-valued names.
    Exists(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn eq(lhs: Expression, rhs: Expression) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    // Constructor taking the operand, unlike std::ops::Not on self.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn forall(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Forall(vars, Box::new(body))
        }
    }

    pub fn exists(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Exists(vars, Box::new(body))
        }
    }

    /// Truth value of a quantifier-free formula under a full environment.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<bool, EvalError> {
        match self {
            Formula::Eq(l, r) => Ok(l.eval(env)? == r.eval(env)?),
            Formula::Cmp(op, l, r) => Ok(op.holds(&l.eval(env)?, &r.eval(env)?)),
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Not(f) => Ok(!f.eval(env)?),
            Formula::Implies(a, b) => Ok(!a.eval(env)? || b.eval(env)?),
            Formula::Forall(..) | Formula::Exists(..) => Err(EvalError::FunctionPresent),
        }
    }
}

/// Formalization of a known side-condition marker, for emission only.
/// `increasing` and `decreasing` become monotonicity sentences; unknown
/// markers have no formula and are preserved as comments by the emitter.
pub fn side_condition_formula(marker: &str) -> Option<Formula> {
    let ordered = |op_args: CmpOp| {
        let x = Expression::var("x");
        let y = Expression::var("y");
        Formula::forall(
            vec!["x".to_string(), "y".to_string()],
            Formula::Implies(
                Box::new(Formula::Cmp(CmpOp::Lt, x.clone(), y.clone())),
                Box::new(Formula::Cmp(
                    op_args,
                    Expression::apply(x),
                    Expression::apply(y),
                )),
            ),
        )
    };
    match marker {
        "increasing" => Some(ordered(CmpOp::Lt)),
        "decreasing" => Some(ordered(CmpOp::Gt)),
        _ => None,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(l, r) => write!(f, "{} = {}", l, r),
            Formula::Cmp(op, l, r) => write!(f, "{} {} {}", l, op.symbol(), r),
            Formula::And(fs) => {
                if fs.is_empty() {
                    return write!(f, "true");
                }
                let parts: Vec<String> = fs.iter().map(|g| format!("({})", g)).collect();
                write!(f, "{}", parts.join(" and "))
            }
            Formula::Or(fs) => {
                if fs.is_empty() {
                    return write!(f, "false");
                }
                let parts: Vec<String> = fs.iter().map(|g| format!("({})", g)).collect();
                write!(f, "{}", parts.join(" or "))
            }
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(l, r) => write!(f, "{} != {}", l, r),
                other => write!(f, "not ({})", other),
            },
            Formula::Implies(a, b) => write!(f, "({}) => ({})", a, b),
            Formula::Forall(vars, body) => {
                write!(f, "forall {} . ({})", vars.join(" "), body)
            }
            Formula::Exists(vars, body) => {
                write!(f, "exists {} . ({})", vars.join(" "), body)
            }
        }
    }
}
