//! Exact multivariate polynomial arithmetic over rationals.
//!
//! Polynomials are sparse maps from monomials to nonzero rational
//! coefficients; the zero polynomial is the empty map. Symbols carry
//! their role (problem variable vs. template coefficient) so the
//! quantifier-elimination kernel can separate the two structurally.
//! Monomials are ordered graded-lexicographically by symbol name, which
//! fixes printing and iteration order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::Integer;
use thiserror::Error;

use crate::expr::{Expression, Rational};

/// A polynomial symbol: a problem variable or a template coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Var(String),
    Coeff(String),
}

impl Symbol {
    pub fn name(&self) -> &str {
        match self {
            Symbol::Var(n) | Symbol::Coeff(n) => n,
        }
    }

    pub fn var(name: &str) -> Symbol {
        Symbol::Var(name.to_owned())
    }

    pub fn coeff(name: &str) -> Symbol {
        Symbol::Coeff(name.to_owned())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Symbol::Var(_))
    }

    fn rank(&self) -> u8 {
        match self {
            Symbol::Var(_) => 0,
            Symbol::Coeff(_) => 1,
        }
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Symbol) -> Ordering {
        self.name()
            .cmp(other.name())
            .then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Symbol) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A product of symbol powers; the empty monomial is 1. No zero exponents
/// are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn symbol(s: Symbol) -> Monomial {
        let mut m = BTreeMap::new();
        m.insert(s, 1);
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.0.keys()
    }

    pub fn pow(&self, exp: u32) -> Monomial {
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), e * exp)).collect())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            *m.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Splits into the part over `vars` (by name, variables only) and the rest.
    fn split(&self, vars: &BTreeSet<String>) -> (Monomial, Monomial) {
        let mut inside = BTreeMap::new();
        let mut outside = BTreeMap::new();
        for (s, e) in &self.0 {
            if s.is_var() && vars.contains(s.name()) {
                inside.insert(s.clone(), *e);
            } else {
                outside.insert(s.clone(), *e);
            }
        }
        (Monomial(inside), Monomial(outside))
    }
}

// Graded lexicographic: higher total degree first; ties broken by the
// exponent of the alphabetically earliest symbol.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let names: BTreeSet<&Symbol> = self.0.keys().chain(other.0.keys()).collect();
            for s in names {
                match self.exponent(s).cmp(&other.exponent(s)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (s, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}^{}", s, e)?;
            }
        }
        Ok(())
    }
}

/// Raised when an expression still containing `f(..)` reaches the
/// polynomial normalizer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expression applies the unknown function and cannot be normalized")]
pub struct NotInlined;

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial(BTreeMap<Monomial, Rational>);

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(r: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::one(), r);
        }
        Polynomial(terms)
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn int(n: i64) -> Polynomial {
        Polynomial::constant(Rational::from_int(n))
    }

    pub fn symbol(s: Symbol) -> Polynomial {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::symbol(s), Rational::one());
        Polynomial(terms)
    }

    pub fn var(name: &str) -> Polynomial {
        Polynomial::symbol(Symbol::var(name))
    }

    pub fn coeff_symbol(name: &str) -> Polynomial {
        Polynomial::symbol(Symbol::coeff(name))
    }

    pub fn from_monomial(m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Polynomial(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The value if the polynomial is constant, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    /// Coefficient of an exact monomial; zero if absent.
    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient_of(&Monomial::one())
    }

    /// Total degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.0.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Degree in a single symbol.
    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.0.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// All symbols occurring with nonzero exponent.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.0
            .keys()
            .flat_map(|m| m.symbols().cloned())
            .collect()
    }

    /// Coefficient of the graded-lex greatest monomial; zero for the zero
    /// polynomial.
    pub fn leading_coefficient(&self) -> Rational {
        self.0
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        assert!(exp >= 1, "polynomial powers need a positive exponent");
        let mut acc = self.clone();
        for _ in 1..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates under a full environment keyed by symbol name.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Rational, String> {
        let mut acc = Rational::zero();
        for (m, c) in &self.0 {
            let mut term = c.clone();
            for (s, e) in &m.0 {
                let v = env
                    .get(s.name())
                    .ok_or_else(|| format!("symbol `{}` has no value", s.name()))?;
                term = term * v.pow(*e);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Partial evaluation: replaces the given symbols by rational values.
    pub fn substituted(&self, values: &BTreeMap<Symbol, Rational>) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.0 {
            let mut coeff = c.clone();
            let mut kept = BTreeMap::new();
            for (s, e) in &m.0 {
                match values.get(s) {
                    Some(v) => coeff = coeff * v.pow(*e),
                    None => {
                        kept.insert(s.clone(), *e);
                    }
                }
            }
            Self::insert_term(&mut terms, Monomial(kept), coeff);
        }
        Polynomial(terms)
    }

    /// Divides by the rational content and flips the sign so the leading
    /// coefficient is positive. The result has coprime integer coefficients.
    /// The zero polynomial is returned unchanged.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.0.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rational::new(num_gcd, den_lcm);
        let mut scale = content.recip();
        if self.leading_coefficient().is_negative() {
            scale = -scale;
        }
        let terms = self
            .0
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() * &scale))
            .collect();
        Polynomial(terms)
    }

    /// Groups the polynomial by its monomials in the given problem
    /// variables. Returns, for each variable monomial occurring in the
    /// polynomial (greatest first), its coefficient as a polynomial over
    /// the remaining symbols. Over the reals the polynomial vanishes for
    /// all values of `vars` exactly when every returned coefficient is the
    /// zero polynomial.
    pub fn coefficients_wrt(&self, vars: &BTreeSet<String>) -> Vec<(Monomial, Polynomial)> {
        debug_assert!(
            self.symbols()
                .iter()
                .all(|s| s.is_var() || !vars.contains(s.name())),
            "vars must name problem variables, not coefficient symbols"
        );
        let mut groups: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.0 {
            let (inside, outside) = m.split(vars);
            let entry = groups.entry(inside).or_insert_with(Polynomial::zero);
            Self::insert_term(&mut entry.0, outside, c.clone());
        }
        groups.into_iter().rev().collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.0.clone();
        for (m, c) in &rhs.0 {
            Polynomial::insert_term(&mut terms, m.clone(), c.clone());
        }
        Polynomial(terms)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial(
            self.0
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (ml, cl) in &self.0 {
            for (mr, cr) in &rhs.0 {
                Polynomial::insert_term(&mut terms, ml.mul(mr), cl * cr);
            }
        }
        Polynomial(terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.0.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Renders with the constant term first, e.g. `-1 + a` instead of
    /// `a - 1`. Reports print both orientations.
    pub fn display_constant_first(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.0.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{}*{}", mag, m));
            }
        }
        out
    }
}

/// Normalizes an `f`-free expression into a polynomial. Evaluation of the
/// result agrees with evaluation of the expression on every environment.
pub fn to_polynomial(e: &Expression) -> Result<Polynomial, NotInlined> {
    match e {
        Expression::Const(r) => Ok(Polynomial::constant(r.clone())),
        Expression::Var(n) => Ok(Polynomial::var(n)),
        Expression::Coeff(n) => Ok(Polynomial::coeff_symbol(n)),
        Expression::Sum(cs) => {
            let mut acc = Polynomial::zero();
            for c in cs {
                acc = &acc + &to_polynomial(c)?;
            }
            Ok(acc)
        }
        Expression::Product(cs) => {
            let mut acc = Polynomial::one();
            for c in cs {
                acc = &acc * &to_polynomial(c)?;
            }
            Ok(acc)
        }
        Expression::Neg(c) => Ok(-&to_polynomial(c)?),
        Expression::Pow(c, n) => Ok(to_polynomial(c)?.pow(*n)),
        Expression::Apply(_) => Err(NotInlined),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Polynomial {
        Polynomial::var("x")
    }

    fn y() -> Polynomial {
        Polynomial::var("y")
    }

    fn a() -> Polynomial {
        Polynomial::coeff_symbol("a")
    }

    fn b() -> Polynomial {
        Polynomial::coeff_symbol("b")
    }

    fn names(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn binomial_square() {
        // (x - y)^2 = x^2 - 2xy + y^2
        let p = (&x() - &y()).pow(2);
        let want = &(&x().pow(2) - &(&Polynomial::int(2) * &(&x() * &y()))) + &y().pow(2);
        assert_eq!(p, want);
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &(&a() * &x().pow(3)) + &Polynomial::int(7);
        assert!((&p - &p).is_zero());
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn product_of_linear_forms_matches_random_evaluation() {
        // (a*x + b)(a*y + b) = a^2*x*y + a*b*x + a*b*y + b^2
        let lhs = &(&(&a() * &x()) + &b()) * &(&(&a() * &y()) + &b());
        let want = &(&(&a().pow(2) * &(&x() * &y()))
            + &(&(&a() * &b()) * &(&x() + &y())))
            + &b().pow(2);
        assert_eq!(lhs, want);

        let mut rng = 1u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Rational::from_int((rng >> 33) as i64 % 19 - 9)
        };
        for _ in 0..20 {
            let env: BTreeMap<String, Rational> = ["a", "b", "x", "y"]
                .iter()
                .map(|n| (n.to_string(), next()))
                .collect();
            assert_eq!(lhs.eval(&env), want.eval(&env));
        }
    }

    #[test]
    fn to_polynomial_expands_inlined_rhs() {
        // x*(a*y + b) + y*(a*x + b) = 2a*xy + b*x + b*y
        let e = Expression::Sum(vec![
            Expression::Product(vec![
                Expression::var("x"),
                Expression::Sum(vec![
                    Expression::Product(vec![Expression::coeff("a"), Expression::var("y")]),
                    Expression::coeff("b"),
                ]),
            ]),
            Expression::Product(vec![
                Expression::var("y"),
                Expression::Sum(vec![
                    Expression::Product(vec![Expression::coeff("a"), Expression::var("x")]),
                    Expression::coeff("b"),
                ]),
            ]),
        ]);
        let p = to_polynomial(&e).unwrap();
        let want = &(&(&Polynomial::int(2) * &(&a() * &(&x() * &y())))
            + &(&b() * &x()))
            + &(&b() * &y());
        assert_eq!(p, want);
    }

    #[test]
    fn to_polynomial_rejects_applications() {
        let e = Expression::apply(Expression::var("x"));
        assert_eq!(to_polynomial(&e), Err(NotInlined));
    }

    #[test]
    fn cancellation_yields_zero() {
        // (1 - 1)*x normalizes to the zero polynomial
        let e = Expression::Product(vec![
            Expression::Sum(vec![Expression::int(1), Expression::neg(Expression::int(1))]),
            Expression::var("x"),
        ]);
        assert!(to_polynomial(&e).unwrap().is_zero());
    }

    #[test]
    fn coefficient_collection_over_two_variables() {
        // p = a*x + a*y + b - 2a*xy - b*x - b*y over {x, y}:
        // xy -> -2a, x -> a - b, y -> a - b, 1 -> b
        let p = &(&(&(&(&(&a() * &x()) + &(&a() * &y())) + &b())
            - &(&Polynomial::int(2) * &(&a() * &(&x() * &y()))))
            - &(&b() * &x()))
            - &(&b() * &y());
        let groups = p.coefficients_wrt(&names(&["x", "y"]));
        let labels: Vec<String> = groups.iter().map(|(m, _)| m.to_string()).collect();
        assert_eq!(labels, vec!["x*y", "x", "y", "1"]);
        assert_eq!(groups[0].1, &Polynomial::int(-2) * &a());
        assert_eq!(groups[1].1, &a() - &b());
        assert_eq!(groups[2].1, &a() - &b());
        assert_eq!(groups[3].1, b());
    }

    #[test]
    fn coefficient_collection_single_variable() {
        // a*x^2 - a^2*x^2 over {x}: x^2 -> a - a^2
        let p = &(&a() * &x().pow(2)) - &(&a().pow(2) * &x().pow(2));
        let groups = p.coefficients_wrt(&names(&["x"]));
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].0.to_string(), "x^2");
        assert_eq!(groups[0].1, &a() - &a().pow(2));
    }

    #[test]
    fn coefficient_collection_zero_polynomial() {
        let groups = Polynomial::zero().coefficients_wrt(&names(&["x", "y"]));
        assert!(groups.is_empty());
    }

    #[test]
    fn reassembling_coefficients_reproduces_polynomial() {
        let p = &(&(&a() * &x().pow(2)) - &(&b() * &(&x() * &y()))) + &Polynomial::int(3);
        let vars = names(&["x", "y"]);
        let mut sum = Polynomial::zero();
        for (m, coeff) in p.coefficients_wrt(&vars) {
            let mono = Polynomial(BTreeMap::from([(m, Rational::one())]));
            sum = &sum + &(&coeff * &mono);
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn primitive_part_examples() {
        // 2a -> a; -2a -> a; a/2 - b/3 -> 3a - 2b
        let two_a = &Polynomial::int(2) * &a();
        assert_eq!(two_a.primitive_part(), a());
        assert_eq!((-&two_a).primitive_part(), a());
        let p = &(&Polynomial::constant(Rational::from_ints(1, 2)) * &a())
            - &(&Polynomial::constant(Rational::from_ints(1, 3)) * &b());
        let want = &(&Polynomial::int(3) * &a()) - &(&Polynomial::int(2) * &b());
        assert_eq!(p.primitive_part(), want);
    }

    #[test]
    fn display_orderings() {
        let p = &(&a().pow(2) - &a()) + &Polynomial::int(1);
        assert_eq!(p.to_string(), "a^2 - a + 1");
        assert_eq!(p.display_constant_first(), "1 - a + a^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn graded_lex_order() {
        let xy = Monomial::symbol(Symbol::var("x")).mul(&Monomial::symbol(Symbol::var("y")));
        let x2 = Monomial::symbol(Symbol::var("x")).mul(&Monomial::symbol(Symbol::var("x")));
        let y2 = Monomial::symbol(Symbol::var("y")).mul(&Monomial::symbol(Symbol::var("y")));
        let x1 = Monomial::symbol(Symbol::var("x"));
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > x1);
        assert!(x1 > Monomial::one());
    }

    prop_compose! {
        fn arb_rational()(n in -9i64..=9, d in 1i64..=5) -> Rational {
            Rational::from_ints(n, d)
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        // Up to four terms over {x, y, a, b} with small exponents.
        let term = (
            arb_rational(),
            0u32..3,
            0u32..3,
            0u32..2,
            0u32..2,
        );
        proptest::collection::vec(term, 0..4).prop_map(|terms| {
            let mut acc = Polynomial::zero();
            for (c, ex, ey, ea, eb) in terms {
                let mut t = Polynomial::constant(c);
                for _ in 0..ex {
                    t = &t * &Polynomial::var("x");
                }
                for _ in 0..ey {
                    t = &t * &Polynomial::var("y");
                }
                for _ in 0..ea {
                    t = &t * &Polynomial::coeff_symbol("a");
                }
                for _ in 0..eb {
                    t = &t * &Polynomial::coeff_symbol("b");
                }
                acc = &acc + &t;
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &Polynomial::zero(), p.clone());
            prop_assert_eq!(&p * &Polynomial::one(), p.clone());
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn coefficients_reassemble(p in arb_poly()) {
            let vars = names(&["x", "y"]);
            let mut sum = Polynomial::zero();
            for (m, coeff) in p.coefficients_wrt(&vars) {
                let mono = Polynomial(BTreeMap::from([(m, Rational::one())]));
                sum = &sum + &(&coeff * &mono);
            }
            prop_assert_eq!(sum, p);
        }
    }
}
