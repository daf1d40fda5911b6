//! Parser for the problem-file DSL.
//!
//! One problem per file, UTF-8, `#` line comments. Statements are
//! line-oriented:
//!
//! ```text
//! problem U3
//! domain Real
//! function f : Real -> Real
//! assert forall x y . f(x+y) = f(x) + y
//! solution f(x) = x + b  param b : Real
//! side increasing
//! ```
//!
//! Expressions use infix `+ - * ^` with integer and rational literals and
//! parenthesized application `f(...)`. The division operator is rejected;
//! `1/2` is read as a rational constant. `param` declares a free parameter
//! of a handwritten solution, optionally restricted by `where`, e.g.
//! `param c : Real where c > 0`.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use thiserror::Error;

use super::{Equation, Expression, Rational};
use crate::formula::CmpOp;
use crate::problem::{ParamDecl, Problem, SolutionCandidate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, col {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, col {col}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("line {line}, col {col}: variable `{name}` used outside its quantifier scope")]
    UnboundVariable { line: usize, col: usize, name: String },
    #[error("line {line}, col {col}: division is not supported; rational literals like 1/2 are allowed as constants only")]
    DivisionUnsupported { line: usize, col: usize },
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Equals,
    Dot,
    Colon,
    Arrow,
    Cmp(CmpOp),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, col });
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, col });
                i += 1;
            }
            '=' => {
                out.push(Spanned { tok: Tok::Equals, col });
                i += 1;
            }
            '.' => {
                out.push(Spanned { tok: Tok::Dot, col });
                i += 1;
            }
            ':' => {
                out.push(Spanned { tok: Tok::Colon, col });
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Spanned { tok: Tok::Arrow, col });
                    i += 2;
                } else {
                    out.push(Spanned { tok: Tok::Minus, col });
                    i += 1;
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Spanned { tok: Tok::Cmp(CmpOp::Le), col });
                    i += 2;
                } else {
                    out.push(Spanned { tok: Tok::Cmp(CmpOp::Lt), col });
                    i += 1;
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Spanned { tok: Tok::Cmp(CmpOp::Ge), col });
                    i += 2;
                } else {
                    out.push(Spanned { tok: Tok::Cmp(CmpOp::Gt), col });
                    i += 1;
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: BigInt = text.parse().expect("digit run parses as integer");
                out.push(Spanned { tok: Tok::Int(n), col });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(text), col });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col,
                    msg: format!("unexpected character `{}`", other),
                });
            }
        }
    }
    Ok(out)
}

struct LineParser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .or_else(|| self.toks.last().map(|s| s.col + 1))
            .unwrap_or(1)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.next() {
            Some(Spanned { tok: Tok::Ident(s), .. }) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error(format!("expected {}", what)))
            }
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(s) if s.tok == tok => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error(format!("expected {}", what)))
            }
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing tokens"))
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut parts = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    parts.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    parts.push(Expression::neg(self.term()?));
                }
                _ => break,
            }
        }
        Ok(Expression::sum(parts))
    }

    // term := unary ('*' unary)*, with a bare '/' rejected
    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut parts = vec![self.unary()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    parts.push(self.unary()?);
                }
                Some(Tok::Slash) => {
                    return Err(ParseError::DivisionUnsupported {
                        line: self.line,
                        col: self.col(),
                    });
                }
                _ => break,
            }
        }
        Ok(Expression::product(parts))
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expression, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            Ok(Expression::neg(self.unary()?))
        } else {
            self.power()
        }
    }

    // power := atom ('^' INT)?
    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Spanned { tok: Tok::Int(n), col }) => {
                    if n < BigInt::from(1) {
                        return Err(ParseError::Syntax {
                            line: self.line,
                            col,
                            msg: "exponent must be a positive integer".to_string(),
                        });
                    }
                    let exp: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        line: self.line,
                        col,
                        msg: "exponent too large".to_string(),
                    })?;
                    Ok(Expression::pow(base, exp))
                }
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    Err(self.error("expected integer exponent after `^`"))
                }
            }
        } else {
            Ok(base)
        }
    }

    // atom := INT ('/' INT)? | IDENT | IDENT '(' expr ')' | '(' expr ')'
    fn atom(&mut self) -> Result<Expression, ParseError> {
        match self.next() {
            Some(Spanned { tok: Tok::Int(n), .. }) => {
                if self.peek() == Some(&Tok::Slash) {
                    let slash_col = self.col();
                    self.next();
                    match self.next() {
                        Some(Spanned { tok: Tok::Int(d), col }) => {
                            if d == BigInt::from(0) {
                                return Err(ParseError::Syntax {
                                    line: self.line,
                                    col,
                                    msg: "rational literal with zero denominator".to_string(),
                                });
                            }
                            Ok(Expression::constant(Rational::new(n, d)))
                        }
                        _ => Err(ParseError::DivisionUnsupported {
                            line: self.line,
                            col: slash_col,
                        }),
                    }
                } else {
                    Ok(Expression::constant(Rational::new(n, BigInt::from(1))))
                }
            }
            Some(Spanned { tok: Tok::Ident(name), col }) => {
                if self.peek() == Some(&Tok::LParen) {
                    if name != "f" {
                        return Err(ParseError::UnknownIdentifier {
                            line: self.line,
                            col,
                            name,
                        });
                    }
                    self.next();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)` closing the application")?;
                    Ok(Expression::apply(arg))
                } else {
                    Ok(Expression::Var(name))
                }
            }
            Some(Spanned { tok: Tok::LParen, .. }) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected an expression"))
            }
        }
    }
}

/// Rewrites provisional `Var` nodes into variables or coefficient symbols
/// against the binding environment of the enclosing statement.
struct Resolver<'a> {
    line: usize,
    toks: &'a [Spanned],
    vars: &'a BTreeSet<String>,
    coeffs: &'a BTreeSet<String>,
}

impl<'a> Resolver<'a> {
    fn ident_col(&self, name: &str) -> usize {
        self.toks
            .iter()
            .find(|s| matches!(&s.tok, Tok::Ident(n) if n == name))
            .map(|s| s.col)
            .unwrap_or(1)
    }

    fn resolve(&self, e: &Expression) -> Result<Expression, ParseError> {
        match e {
            Expression::Const(_) | Expression::Coeff(_) => Ok(e.clone()),
            Expression::Var(n) => {
                if self.vars.contains(n) {
                    Ok(Expression::Var(n.clone()))
                } else if self.coeffs.contains(n) {
                    Ok(Expression::Coeff(n.clone()))
                } else {
                    Err(ParseError::UnboundVariable {
                        line: self.line,
                        col: self.ident_col(n),
                        name: n.clone(),
                    })
                }
            }
            Expression::Sum(cs) => Ok(Expression::Sum(
                cs.iter().map(|c| self.resolve(c)).collect::<Result<_, _>>()?,
            )),
            Expression::Product(cs) => Ok(Expression::Product(
                cs.iter().map(|c| self.resolve(c)).collect::<Result<_, _>>()?,
            )),
            Expression::Neg(c) => Ok(Expression::neg(self.resolve(c)?)),
            Expression::Pow(c, n) => Ok(Expression::Pow(Box::new(self.resolve(c)?), *n)),
            Expression::Apply(c) => Ok(Expression::apply(self.resolve(c)?)),
        }
    }
}

#[derive(Debug)]
struct RawAssert {
    vars: Vec<String>,
    lhs: Expression,
    rhs: Expression,
    line: usize,
    toks: Vec<Spanned>,
}

#[derive(Debug)]
struct RawSolution {
    var: String,
    body: Expression,
    params: Vec<ParamDecl>,
    line: usize,
    toks: Vec<Spanned>,
}

/// Parses one problem file.
pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut name: Option<String> = None;
    let mut domain: Option<String> = None;
    let mut func_declared = false;
    let mut asserts: Vec<RawAssert> = Vec::new();
    let mut solutions: Vec<RawSolution> = Vec::new();
    let mut side_conditions: Vec<String> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = lex_line(raw_line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser { toks, pos: 0, line: lineno };
        let head = p.expect_ident("a statement keyword")?;
        match head.as_str() {
            "problem" => {
                let n = p.expect_ident("a problem name")?;
                p.expect_end()?;
                if name.replace(n).is_some() {
                    return Err(p.error("duplicate `problem` line"));
                }
            }
            "domain" => {
                let d = p.expect_ident("a domain name")?;
                p.expect_end()?;
                if domain.replace(d).is_some() {
                    return Err(p.error("duplicate `domain` line"));
                }
            }
            "function" => {
                let f = p.expect_ident("a function name")?;
                p.expect(Tok::Colon, "`:`")?;
                let from = p.expect_ident("an argument sort")?;
                p.expect(Tok::Arrow, "`->`")?;
                let to = p.expect_ident("a result sort")?;
                p.expect_end()?;
                if f != "f" {
                    return Err(p.error("the unknown function must be named `f`"));
                }
                if from != "Real" || to != "Real" {
                    return Err(p.error("the unknown function must have sort Real -> Real"));
                }
                if func_declared {
                    return Err(p.error("duplicate `function` line"));
                }
                func_declared = true;
            }
            "assert" => {
                let mut vars = Vec::new();
                if p.peek() == Some(&Tok::Ident("forall".to_string())) {
                    p.next();
                    loop {
                        match p.peek() {
                            Some(Tok::Ident(_)) => {
                                let v = p.expect_ident("a variable")?;
                                if vars.contains(&v) {
                                    return Err(p.error(format!(
                                        "duplicate quantified variable `{}`",
                                        v
                                    )));
                                }
                                vars.push(v);
                            }
                            Some(Tok::Dot) => {
                                p.next();
                                break;
                            }
                            _ => return Err(p.error("expected a variable or `.`")),
                        }
                    }
                    if vars.is_empty() {
                        return Err(p.error("`forall` needs at least one variable"));
                    }
                }
                let lhs = p.expr()?;
                p.expect(Tok::Equals, "`=`")?;
                let rhs = p.expr()?;
                p.expect_end()?;
                asserts.push(RawAssert { vars, lhs, rhs, line: lineno, toks: p.toks });
            }
            "solution" => {
                let f = p.expect_ident("the function name")?;
                if f != "f" {
                    return Err(p.error("solutions are written as `f(x) = ...`"));
                }
                p.expect(Tok::LParen, "`(`")?;
                let var = p.expect_ident("the solution variable")?;
                p.expect(Tok::RParen, "`)`")?;
                p.expect(Tok::Equals, "`=`")?;
                let body = p.expr()?;
                let mut params = Vec::new();
                while !p.at_end() {
                    let kw = p.expect_ident("`param`")?;
                    if kw != "param" {
                        return Err(p.error("expected `param` or end of line"));
                    }
                    let pname = p.expect_ident("a parameter name")?;
                    p.expect(Tok::Colon, "`:`")?;
                    let sort = p.expect_ident("a sort")?;
                    if sort != "Real" {
                        return Err(p.error("parameters must have sort Real"));
                    }
                    let mut constraint = None;
                    if p.peek() == Some(&Tok::Ident("where".to_string())) {
                        p.next();
                        let lhs_name = p.expect_ident("the parameter name")?;
                        if lhs_name != pname {
                            return Err(p.error(format!(
                                "`where` clause must constrain `{}`",
                                pname
                            )));
                        }
                        let op = match p.next() {
                            Some(Spanned { tok: Tok::Cmp(op), .. }) => op,
                            _ => {
                                return Err(p.error("expected a comparison operator"));
                            }
                        };
                        let bound = parse_signed_rational(&mut p)?;
                        constraint = Some((op, bound));
                    }
                    if params.iter().any(|q: &ParamDecl| q.name == pname) {
                        return Err(p.error(format!("duplicate parameter `{}`", pname)));
                    }
                    params.push(ParamDecl { name: pname, constraint });
                }
                solutions.push(RawSolution { var, body, params, line: lineno, toks: p.toks });
            }
            "side" => {
                let marker = p.expect_ident("a side-condition marker")?;
                p.expect_end()?;
                side_conditions.push(marker);
            }
            other => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    msg: format!("unknown statement `{}`", other),
                });
            }
        }
    }

    let name = name.ok_or_else(|| ParseError::Malformed("missing `problem` line".to_string()))?;
    if asserts.is_empty() {
        return Err(ParseError::Malformed(format!(
            "problem {} has no `assert` lines",
            name
        )));
    }
    let domain = domain.unwrap_or_else(|| "Real".to_string());

    let mut equations = Vec::new();
    for a in &asserts {
        let vars: BTreeSet<String> = a.vars.iter().cloned().collect();
        let coeffs = BTreeSet::new();
        let r = Resolver { line: a.line, toks: &a.toks, vars: &vars, coeffs: &coeffs };
        let lhs = r.resolve(&a.lhs)?;
        let rhs = r.resolve(&a.rhs)?;
        equations.push(Equation::new(lhs, rhs, a.vars.clone()));
    }

    let mut candidates = Vec::new();
    for s in &solutions {
        let vars: BTreeSet<String> = [s.var.clone()].into_iter().collect();
        let coeffs: BTreeSet<String> = s.params.iter().map(|p| p.name.clone()).collect();
        if coeffs.contains(&s.var) {
            return Err(ParseError::Malformed(format!(
                "solution parameter shadows the solution variable `{}`",
                s.var
            )));
        }
        if s.body.contains_apply() {
            return Err(ParseError::Syntax {
                line: s.line,
                col: 1,
                msg: "the unknown function may not appear in a solution body".to_string(),
            });
        }
        let r = Resolver { line: s.line, toks: &s.toks, vars: &vars, coeffs: &coeffs };
        let body = r.resolve(&s.body)?;
        candidates.push(SolutionCandidate {
            var: s.var.clone(),
            body,
            params: s.params.clone(),
        });
    }

    Ok(Problem {
        name,
        domain,
        equations,
        side_conditions,
        solutions: candidates,
    })
}

fn parse_signed_rational(p: &mut LineParser) -> Result<Rational, ParseError> {
    let negative = if p.peek() == Some(&Tok::Minus) {
        p.next();
        true
    } else {
        false
    };
    match p.next() {
        Some(Spanned { tok: Tok::Int(n), .. }) => {
            let mut num = n;
            let mut den = BigInt::from(1);
            if p.peek() == Some(&Tok::Slash) {
                p.next();
                match p.next() {
                    Some(Spanned { tok: Tok::Int(d), col }) => {
                        if d == BigInt::from(0) {
                            return Err(ParseError::Syntax {
                                line: p.line,
                                col,
                                msg: "zero denominator".to_string(),
                            });
                        }
                        den = d;
                    }
                    _ => return Err(p.error("expected a denominator")),
                }
            }
            if negative {
                num = -num;
            }
            Ok(Rational::new(num, den))
        }
        _ => {
            p.pos = p.pos.saturating_sub(1);
            Err(p.error("expected a rational bound"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(text: &str) -> Problem {
        parse_problem(text).expect("problem parses")
    }

    #[test]
    fn parses_motivating_equation() {
        let p = parse_ok(
            "problem Eq1\n\
             domain Real\n\
             function f : Real -> Real\n\
             assert forall x y . f(x+y) = x*f(y) + y*f(x)\n\
             solution f(x) = 0\n",
        );
        assert_eq!(p.name, "Eq1");
        assert_eq!(p.equations.len(), 1);
        assert_eq!(p.equations[0].vars, vec!["x", "y"]);
        let lhs = &p.equations[0].lhs;
        assert_eq!(
            lhs,
            &Expression::apply(Expression::Sum(vec![
                Expression::var("x"),
                Expression::var("y"),
            ]))
        );
        assert_eq!(p.solutions.len(), 1);
        assert_eq!(p.solutions[0].body, Expression::int(0));
    }

    #[test]
    fn parses_trivial_reflexive_equation() {
        let p = parse_ok("problem t\nassert forall x . f(x) = f(x)\n");
        assert_eq!(p.equations[0].lhs, p.equations[0].rhs);
    }

    #[test]
    fn rejects_unbound_variable_and_division() {
        let err = parse_problem("problem t\nassert forall x . f(x) = x/y\n").unwrap_err();
        assert!(matches!(err, ParseError::DivisionUnsupported { .. }));

        let err = parse_problem("problem t\nassert forall x . f(x) = x + y\n").unwrap_err();
        match err {
            ParseError::UnboundVariable { name, line, .. } => {
                assert_eq!(name, "y");
                assert_eq!(line, 2);
            }
            other => panic!("expected unbound-variable error, got {other:?}"),
        }
    }

    #[test]
    fn rational_literals_are_constants() {
        let p = parse_ok("problem t\nassert forall x . f(x) = 1/2*x\n");
        let rhs = &p.equations[0].rhs;
        assert_eq!(
            rhs,
            &Expression::Product(vec![
                Expression::constant(Rational::from_ints(1, 2)),
                Expression::var("x"),
            ])
        );
    }

    #[test]
    fn rejects_unknown_function_application() {
        let err = parse_problem("problem t\nassert forall x . f(x) = g(x)\n").unwrap_err();
        match err {
            ParseError::UnknownIdentifier { name, .. } => assert_eq!(name, "g"),
            other => panic!("expected unknown-identifier error, got {other:?}"),
        }
    }

    #[test]
    fn parses_solution_with_param_and_side_condition() {
        let p = parse_ok(
            "problem U2\n\
             domain Real\n\
             function f : Real -> Real\n\
             assert forall x y . f(x) + f(y) = f(x+y)\n\
             side increasing\n\
             solution f(x) = c*x  param c : Real where c > 0\n",
        );
        assert_eq!(p.side_conditions, vec!["increasing"]);
        let s = &p.solutions[0];
        assert_eq!(
            s.body,
            Expression::Product(vec![Expression::coeff("c"), Expression::var("x")])
        );
        let c = &s.params[0];
        assert_eq!(c.name, "c");
        assert_eq!(c.constraint, Some((CmpOp::Gt, Rational::zero())));
    }

    #[test]
    fn rejects_apply_in_solution_body() {
        let err =
            parse_problem("problem t\nassert forall x . f(x) = x\nsolution f(x) = f(x)\n")
                .unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_problem("problem t\nassert forall x . f(x) = \n").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn exponent_must_be_positive() {
        assert!(parse_problem("problem t\nassert forall x . f(x) = x^0\n").is_err());
        assert!(parse_problem("problem t\nassert forall x . f(x^1) = x\n").is_ok());
    }
}
