//! Minimal s-expression reader and printer used to build SMT-LIB2 output
//! and to check that emitted files parse back to the same tree.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items)
    }

    /// `(head item1 item2 ...)`.
    pub fn call(head: &str, mut items: Vec<Sexp>) -> Sexp {
        let mut v = vec![Sexp::atom(head)];
        v.append(&mut items);
        Sexp::List(v)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => write!(f, "{}", a),
            Sexp::List(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", item)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("unbalanced `(` at byte {0}")]
    UnclosedParen(usize),
    #[error("unexpected `)` at byte {0}")]
    UnexpectedClose(usize),
}

/// Parses a sequence of top-level s-expressions. `;` starts a comment
/// running to end of line.
pub fn parse_sexps(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();

    let push = |stack: &mut Vec<(usize, Vec<Sexp>)>, top: &mut Vec<Sexp>, s: Sexp| {
        match stack.last_mut() {
            Some((_, items)) => items.push(s),
            None => top.push(s),
        }
    };

    while i < bytes.len() {
        match bytes[i] {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            b'(' => {
                stack.push((i, Vec::new()));
                i += 1;
            }
            b')' => {
                let (_, items) = stack.pop().ok_or(SexpError::UnexpectedClose(i))?;
                push(&mut stack, &mut top, Sexp::List(items));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                    && bytes[i] != b';'
                {
                    i += 1;
                }
                push(
                    &mut stack,
                    &mut top,
                    Sexp::Atom(text[start..i].to_string()),
                );
            }
        }
    }
    if let Some((at, _)) = stack.first() {
        return Err(SexpError::UnclosedParen(*at));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "(set-logic AUFNIRA)\n; a comment\n(assert (= (f x) 0.0))\n(check-sat)";
        let forms = parse_sexps(text).unwrap();
        assert_eq!(forms.len(), 3);
        let printed: Vec<String> = forms.iter().map(|s| s.to_string()).collect();
        let reparsed = parse_sexps(&printed.join("\n")).unwrap();
        assert_eq!(forms, reparsed);
    }

    #[test]
    fn balance_errors() {
        assert!(matches!(
            parse_sexps("(a (b)"),
            Err(SexpError::UnclosedParen(0))
        ));
        assert!(matches!(
            parse_sexps("a) b"),
            Err(SexpError::UnexpectedClose(1))
        ));
    }
}
