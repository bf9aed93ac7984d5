//! Problem files.
//!
//! ```text
//! # comment
//! theory group f i 1      # associative f, inverse i, unit 1
//! theory monoid g 1_g
//! assoc k                 # associative, no unit
//! fun h 1                 # uninterpreted, fixed arity
//! const a b
//! precedence a b          # greatest first
//! eq f(h(a),h(a)) = 1
//! decide h(a) = i(i(b))
//! option fuel 5000
//! option skip-unit-deduce
//! ```
//!
//! Declarations may appear in any order; equations and queries are read
//! after every declaration has been seen.

use crate::error::{Error, Result};
use crate::order::OrderingConfig;
use crate::term::{Signature, Sym, SymbolKind, Term, TheorySig};
use crate::theory::TheoryConfig;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProblemOptions {
    pub fuel: Option<u64>,
    pub skip_unit_deduce: bool,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub sig: Signature,
    pub theory: TheoryConfig,
    pub precedence: Option<Vec<Sym>>,
    pub equations: Vec<(Term, Term)>,
    pub queries: Vec<(Term, Term)>,
    pub options: ProblemOptions,
}

impl Problem {
    pub fn ordering(&self) -> Result<OrderingConfig> {
        OrderingConfig::new(&self.sig, self.precedence.as_deref(), &self.theory.sigs)
    }

    pub fn equation_terms(&self) -> Vec<(Term, Term)> {
        self.equations.clone()
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits off a comment and returns the remaining text.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

struct Deferred {
    line: usize,
    col: usize,
    text: String,
    query: bool,
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut sig = Signature::new();
    let mut theories: Vec<TheorySig> = Vec::new();
    let mut precedence: Option<(usize, Vec<String>)> = None;
    let mut deferred = Vec::new();
    let mut options = ProblemOptions::default();

    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let mut words = trimmed.split_whitespace();
        let kw = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let col = indent + 1;
        for w in &rest {
            if !matches!(kw, "eq" | "decide" | "option") && !is_ident(w) {
                return Err(perr(ln, col, format!("`{w}` is not an identifier")));
            }
        }
        let declare = |r: Result<Sym>| {
            r.map_err(|e| match e {
                Error::Duplicate(n) => perr(ln, col, format!("symbol `{n}` is already declared")),
                other => other,
            })
        };
        match kw {
            "theory" => {
                let (kind, names) = rest
                    .split_first()
                    .ok_or_else(|| perr(ln, col, "expected `group` or `monoid`"))?;
                let want = match *kind {
                    "group" => 3,
                    "monoid" => 2,
                    _ => return Err(perr(ln, col, format!("unknown theory `{kind}`"))),
                };
                if names.len() != want {
                    return Err(perr(ln, col, format!("`theory {kind}` takes {want} symbol names")));
                }
                if let Some(s) = sig.lookup(names[0]) {
                    if sig.is_assoc(s) {
                        return Err(Error::DuplicateTheory(names[0].to_string()));
                    }
                }
                let idx = theories.len();
                let assoc = declare(sig.add_assoc(names[0]))?;
                let (inverse, unit) = if want == 3 {
                    let i = declare(sig.add_inverse(names[1], idx))?;
                    (Some(i), declare(sig.add_unit(names[2], idx))?)
                } else {
                    (None, declare(sig.add_unit(names[1], idx))?)
                };
                theories.push(TheorySig { assoc, inverse, unit });
            }
            "assoc" => {
                for n in &rest {
                    if let Some(s) = sig.lookup(n) {
                        if sig.is_assoc(s) && theories.iter().any(|t| t.assoc == s) {
                            return Err(Error::DuplicateTheory(n.to_string()));
                        }
                    }
                    declare(sig.add_assoc(n))?;
                }
            }
            "fun" => {
                if rest.len() != 2 {
                    return Err(perr(ln, col, "expected `fun <name> <arity>`"));
                }
                let arity: usize = rest[1]
                    .parse()
                    .map_err(|_| perr(ln, col, format!("bad arity `{}`", rest[1])))?;
                declare(sig.add_function(rest[0], arity))?;
            }
            "const" => {
                for n in &rest {
                    declare(sig.add_constant(n))?;
                }
            }
            "precedence" => {
                if precedence.is_some() {
                    return Err(Error::Precedence("given more than once".into()));
                }
                precedence = Some((ln, rest.iter().map(|s| s.to_string()).collect()));
            }
            "option" => match rest.as_slice() {
                ["fuel", n] => {
                    let n: u64 = n.parse().map_err(|_| perr(ln, col, format!("bad fuel `{n}`")))?;
                    options.fuel = Some(n);
                }
                ["skip-unit-deduce"] => options.skip_unit_deduce = true,
                _ => return Err(perr(ln, col, "unknown option")),
            },
            "eq" | "decide" => {
                let off = indent + kw.len();
                deferred.push(Deferred {
                    line: ln,
                    col: off + 1,
                    text: body[off..].to_string(),
                    query: kw == "decide",
                });
            }
            other => return Err(perr(ln, col, format!("unknown keyword `{other}`"))),
        }
    }

    let theory = TheoryConfig::from_sigs(theories)?;
    let precedence = match precedence {
        None => None,
        Some((_, names)) => Some(
            names
                .iter()
                .map(|n| match sig.lookup(n) {
                    Some(s) if sig.is_constant(s) => Ok(s),
                    Some(_) => Err(Error::Precedence(format!("`{n}` is not a constant"))),
                    None => Err(Error::UnknownSymbol(n.clone())),
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    OrderingConfig::new(&sig, precedence.as_deref(), &theory.sigs)?;

    let mut equations = Vec::new();
    let mut queries = Vec::new();
    for d in deferred {
        let pair = parse_equation(&sig, &d.text, d.line, d.col)?;
        if d.query {
            queries.push(pair);
        } else {
            equations.push(pair);
        }
    }
    Ok(Problem {
        sig,
        theory,
        precedence,
        equations,
        queries,
        options,
    })
}

fn parse_equation(sig: &Signature, text: &str, line: usize, col0: usize) -> Result<(Term, Term)> {
    let mut p = TermParser {
        sig,
        src: text.as_bytes(),
        pos: 0,
        line,
        col0,
    };
    let s = p.term()?;
    p.skip_ws();
    if !p.eat(b'=') {
        return Err(p.error("expected `=`"));
    }
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok((s, t))
}

/// Parses one term against a signature.
pub fn parse_term_with(sig: &Signature, text: &str) -> Result<Term> {
    let mut p = TermParser {
        sig,
        src: text.as_bytes(),
        pos: 0,
        line: 1,
        col0: 1,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct TermParser<'a> {
    sig: &'a Signature,
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl TermParser<'_> {
    fn error(&self, msg: &str) -> Error {
        perr(self.line, self.col0 + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an identifier"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?.to_string();
        let s = self
            .sig
            .lookup(&name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        self.skip_ws();
        let mut args = Vec::new();
        if self.eat(b'(') {
            loop {
                args.push(self.term()?);
                self.skip_ws();
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b')') {
                    break;
                }
                return Err(self.error("expected `,` or `)`"));
            }
        }
        let arity_err = |expected: &str| Error::Arity {
            name: name.clone(),
            expected: expected.to_string(),
            got: args.len(),
        };
        match self.sig.kind(s) {
            k if k.is_constant() => {
                if !args.is_empty() {
                    return Err(arity_err("0"));
                }
                Ok(Term::Const(s))
            }
            SymbolKind::Function { arity } if args.len() != arity => Err(arity_err(&arity.to_string())),
            SymbolKind::Inverse { .. } if args.len() != 1 => Err(arity_err("1")),
            SymbolKind::Assoc if args.len() < 2 => Err(arity_err("at least 2")),
            _ => Ok(Term::App(s, args)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::Mode;

    const INTRO: &str = "theory group f i 1\nfun h 1\nconst a b\n\
        eq f(h(a),h(a)) = 1\neq i(h(a)) = b\ndecide h(a) = i(i(b))";

    #[test]
    fn intro_file() {
        let p = parse_problem(INTRO).unwrap();
        assert_eq!(p.equations.len(), 2);
        assert_eq!(p.queries.len(), 1);
        assert_eq!(p.theory.mode, Mode::Group);
        assert_eq!(p.sig.render(&p.queries[0].1), "i(i(b))");
    }

    #[test]
    fn empty_file() {
        let p = parse_problem("").unwrap();
        assert!(p.equations.is_empty() && p.queries.is_empty());
        assert_eq!(p.theory.mode, Mode::Semigroup);
    }

    #[test]
    fn assoc_needs_two_arguments() {
        let e = parse_problem("assoc f\nconst a b\neq f(a) = b\n").unwrap_err();
        assert!(matches!(e, Error::Arity { got: 1, .. }), "{e}");
    }

    #[test]
    fn diagnostics() {
        assert_eq!(
            parse_problem("const a\neq a = b\n").unwrap_err(),
            Error::UnknownSymbol("b".into())
        );
        assert!(matches!(
            parse_problem("fun h 1\nconst a\neq h(a,a) = a\n").unwrap_err(),
            Error::Arity { .. }
        ));
        assert_eq!(
            parse_problem("theory group f i 1\ntheory monoid f e\n").unwrap_err(),
            Error::DuplicateTheory("f".into())
        );
        assert!(matches!(
            parse_problem("const a b\nprecedence a\n").unwrap_err(),
            Error::Precedence(_)
        ));
        assert!(matches!(
            parse_problem("const a b\nprecedence a a b\n").unwrap_err(),
            Error::Precedence(_)
        ));
        let e = parse_problem("const a\n  eq a = a )\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn declarations_after_use_and_comments() {
        let p = parse_problem("eq f(a,b) = a # note\nassoc f\nconst a b\n# end\n").unwrap();
        assert_eq!(p.equations.len(), 1);
    }

    #[test]
    fn options_and_precedence() {
        let p =
            parse_problem("theory monoid f 1\nconst a b\nprecedence b a 1\noption fuel 7\noption skip-unit-deduce\n")
                .unwrap();
        assert_eq!(p.options.fuel, Some(7));
        assert!(p.options.skip_unit_deduce);
        let ord = p.ordering().unwrap();
        let names: Vec<&str> = ord.precedence().iter().map(|&s| p.sig.name(s)).collect();
        assert_eq!(names, ["b", "a", "1"]);
    }

    #[test]
    fn multi_group_units() {
        let p = parse_problem("theory group f i_f 1_f\ntheory group g i_g 1_g\nconst a\neq g(a,1_f) = a\n").unwrap();
        assert_eq!(p.theory.mode, Mode::MultiGroup);
    }
}
