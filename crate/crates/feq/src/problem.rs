//! The problem model, the bundled corpus and handwritten-solution records.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::expr::{parse_problem, Equation, Expression, ParseError, Rational};
use crate::formula::CmpOp;

/// A named functional-equation specification: universally quantified
/// equations, opaque side-condition markers and optional handwritten
/// solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub domain: String,
    pub equations: Vec<Equation>,
    pub side_conditions: Vec<String>,
    pub solutions: Vec<SolutionCandidate>,
}

/// A proposed solution `f(var) = body`, possibly with free parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCandidate {
    pub var: String,
    pub body: Expression,
    pub params: Vec<ParamDecl>,
}

/// A free parameter of a solution with an optional range constraint,
/// e.g. `param c : Real where c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub constraint: Option<(CmpOp, Rational)>,
}

impl SolutionCandidate {
    /// `f(x) = body` rendered with the candidate's own variable name.
    pub fn describe(&self) -> String {
        format!("f({}) = {}", self.var, self.body)
    }

    /// Replaces every `f(t)` in `e` by this candidate's body instantiated
    /// at `t`, innermost first.
    pub fn inline_into(&self, e: &Expression) -> Expression {
        match e {
            Expression::Const(_) | Expression::Var(_) | Expression::Coeff(_) => e.clone(),
            Expression::Sum(cs) => {
                Expression::Sum(cs.iter().map(|c| self.inline_into(c)).collect())
            }
            Expression::Product(cs) => {
                Expression::Product(cs.iter().map(|c| self.inline_into(c)).collect())
            }
            Expression::Neg(c) => Expression::neg(self.inline_into(c)),
            Expression::Pow(c, n) => Expression::Pow(Box::new(self.inline_into(c)), *n),
            Expression::Apply(arg) => {
                let arg = self.inline_into(arg);
                let binding = std::iter::once((self.var.clone(), arg)).collect();
                self.body.substitute(&binding)
            }
        }
    }
}

/// Whether the internal pipeline can handle a problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fragment {
    Equational,
    Unsupported(UnsupportedReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnsupportedReason {
    #[error("order side-condition `{0}`")]
    SideCondition(String),
    #[error("non-real domain `{0}`")]
    NonRealDomain(String),
}

/// Classifies a problem for the internal pipeline. Equations, absence of
/// division and rational literals are guaranteed by the parser, so the
/// checks left are the quantification domain and side conditions.
pub fn classify_fragment(p: &Problem) -> Fragment {
    if p.domain != "Real" {
        return Fragment::Unsupported(UnsupportedReason::NonRealDomain(p.domain.clone()));
    }
    if let Some(marker) = p.side_conditions.first() {
        return Fragment::Unsupported(UnsupportedReason::SideCondition(marker.clone()));
    }
    Fragment::Equational
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus problem {name}: {source}")]
    Parse {
        name: String,
        #[source]
        source: ParseError,
    },
    #[error("reading corpus: {0}")]
    Io(#[from] std::io::Error),
}

const BUNDLED: &[(&str, &str)] = &[
    ("C1", include_str!("../corpus/C1.feq")),
    ("C12", include_str!("../corpus/C12.feq")),
    ("Eq1", include_str!("../corpus/Eq1.feq")),
    ("U2", include_str!("../corpus/U2.feq")),
    ("U24", include_str!("../corpus/U24.feq")),
    ("U25", include_str!("../corpus/U25.feq")),
    ("U3", include_str!("../corpus/U3.feq")),
    ("U87", include_str!("../corpus/U87.feq")),
    ("U91", include_str!("../corpus/U91.feq")),
];

/// Loads the bundled corpus, ordered name-naturally (C1, C12, Eq1, U2, U3,
/// U24, ...).
pub fn load_corpus() -> Result<Vec<Problem>, CorpusError> {
    let mut out = Vec::new();
    for (name, text) in BUNDLED {
        let p = parse_problem(text).map_err(|source| CorpusError::Parse {
            name: (*name).to_string(),
            source,
        })?;
        out.push(p);
    }
    out.sort_by_key(|p| natural_key(&p.name));
    Ok(out)
}

/// Loads one bundled problem by name.
pub fn corpus_problem(name: &str) -> Result<Problem, CorpusError> {
    load_corpus()?
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| CorpusError::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no bundled problem named {name}"),
        )))
}

/// Loads every `*.feq` file in a directory, ordered like [`load_corpus`].
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<Problem>, CorpusError> {
    let mut out = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(dir)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "feq"))
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let p = parse_problem(&text).map_err(|source| CorpusError::Parse { name, source })?;
        out.push(p);
    }
    out.sort_by_key(|p| natural_key(&p.name));
    Ok(out)
}

/// Sort key splitting a name into its alphabetic prefix and trailing number,
/// so U2 sorts before U24.
fn natural_key(name: &str) -> (String, u64, String) {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (prefix, rest) = name.split_at(split);
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let tail = &rest[digits.len()..];
    (
        prefix.to_string(),
        digits.parse().unwrap_or(0),
        tail.to_string(),
    )
}

impl fmt::Display for ParamDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "param {} : Real", self.name)?;
        if let Some((op, bound)) = &self.constraint {
            write!(f, " where {} {} {}", self.name, op.symbol(), bound)?;
        }
        Ok(())
    }
}

impl fmt::Display for Problem {
    /// Prints the problem back in the DSL; parsing the output yields the
    /// same problem.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem {}", self.name)?;
        writeln!(f, "domain {}", self.domain)?;
        writeln!(f, "function f : {} -> {}", self.domain, self.domain)?;
        for eq in &self.equations {
            writeln!(f, "assert {}", eq)?;
        }
        for marker in &self.side_conditions {
            writeln!(f, "side {}", marker)?;
        }
        for s in &self.solutions {
            write!(f, "solution f({}) = {}", s.var, s.body)?;
            for p in &s.params {
                write!(f, " {}", p)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
