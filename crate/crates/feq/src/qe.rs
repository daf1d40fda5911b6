//! Quantifier elimination for the inlined equational fragment.
//!
//! A universally quantified polynomial identity over the reals holds
//! exactly when every coefficient with respect to the quantified variables
//! vanishes, because a nonzero real polynomial cannot be identically zero
//! on an infinite domain. That turns `forall x y . p(x, y) = 0` into a
//! conjunction of polynomial equations over the template coefficients
//! alone, with no search and no case splits.

use std::collections::BTreeSet;
use std::fmt;

use crate::poly::Polynomial;

/// A conjunction of polynomial equations `p = 0` over template-coefficient
/// symbols only; problem variables never occur.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefficientConstraint {
    equations: Vec<Polynomial>,
}

impl CoefficientConstraint {
    pub fn new(equations: Vec<Polynomial>) -> CoefficientConstraint {
        debug_assert!(
            equations
                .iter()
                .all(|p| p.symbols().iter().all(|s| !s.is_var())),
            "coefficient constraints must not mention problem variables"
        );
        CoefficientConstraint { equations }
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Renders each equation constant-first, e.g. `-1 + a = 0`, the
    /// orientation quantifier-elimination engines typically print.
    pub fn display_constant_first(&self) -> String {
        if self.equations.is_empty() {
            return "{}".to_string();
        }
        let parts: Vec<String> = self
            .equations
            .iter()
            .map(|p| format!("{} = 0", p.display_constant_first()))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for CoefficientConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equations.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .equations
            .iter()
            .map(|p| format!("{} = 0", p))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Eliminates the universally quantified problem variables from a list of
/// inlined polynomial identities. The result is the normalized union of
/// all variable-monomial coefficients and is equivalent over the reals to
/// the original quantified conjunction.
pub fn eliminate(inlined: &[Polynomial], vars: &BTreeSet<String>) -> CoefficientConstraint {
    let mut collected = Vec::new();
    for p in inlined {
        for (_, coefficient) in p.coefficients_wrt(vars) {
            collected.push(coefficient);
        }
    }
    normalize_constraint(&CoefficientConstraint::new(collected))
}

/// Removes syntactically trivial content: zero polynomials are dropped,
/// each equation is divided by its rational content with the leading
/// coefficient made positive, and duplicates are removed keeping first
/// occurrence. No entailment reasoning happens here.
pub fn normalize_constraint(c: &CoefficientConstraint) -> CoefficientConstraint {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in &c.equations {
        if p.is_zero() {
            continue;
        }
        let normalized = p.primitive_part();
        if !out.contains(&normalized) {
            out.push(normalized);
        }
    }
    CoefficientConstraint { equations: out }
}
