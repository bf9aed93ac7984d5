//! Symbols, ground terms and associative flattening.
//!
//! Terms are plain values. An application of an associative symbol is kept
//! variadic; [`Term::assoc_flatten`] splices nested applications of the same
//! symbol so that every A-equivalence class has exactly one representative.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    /// Uninterpreted function of fixed arity.
    Function {
        arity: usize,
    },
    /// Associative function, variadic with at least two arguments.
    Assoc,
    Inverse {
        theory: usize,
    },
    Unit {
        theory: usize,
    },
    Original,
    Fresh {
        index: u32,
    },
}

impl SymbolKind {
    pub fn is_constant(self) -> bool {
        matches!(
            self,
            SymbolKind::Unit { .. } | SymbolKind::Original | SymbolKind::Fresh { .. }
        )
    }
}

#[derive(Debug, Clone)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
}

/// The interpreted symbols of one theory. `inverse` is absent for monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheorySig {
    pub assoc: Sym,
    pub inverse: Option<Sym>,
    pub unit: Sym,
}

/// Symbol table. Fresh constants are allocated here with strictly
/// increasing indices until the table is frozen.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
    by_name: HashMap<String, Sym>,
    next_fresh: u32,
    frozen: bool,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn insert(&mut self, name: &str, kind: SymbolKind) -> Result<Sym> {
        if self.by_name.contains_key(name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        let s = Sym(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_string(),
            kind,
        });
        self.by_name.insert(name.to_string(), s);
        Ok(s)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<Sym> {
        if arity == 0 {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: "at least 1".into(),
                got: 0,
            });
        }
        self.insert(name, SymbolKind::Function { arity })
    }

    pub fn add_assoc(&mut self, name: &str) -> Result<Sym> {
        self.insert(name, SymbolKind::Assoc)
    }

    pub fn add_inverse(&mut self, name: &str, theory: usize) -> Result<Sym> {
        self.insert(name, SymbolKind::Inverse { theory })
    }

    pub fn add_unit(&mut self, name: &str, theory: usize) -> Result<Sym> {
        self.insert(name, SymbolKind::Unit { theory })
    }

    pub fn add_constant(&mut self, name: &str) -> Result<Sym> {
        self.insert(name, SymbolKind::Original)
    }

    /// Allocates the next fresh constant `c<k>`. A name already taken by a
    /// user symbol gets an underscore prefix.
    pub fn fresh_const(&mut self) -> Result<Sym> {
        if self.frozen {
            return Err(Error::RegistryFrozen);
        }
        self.next_fresh += 1;
        let index = self.next_fresh;
        let mut name = format!("c{index}");
        while self.by_name.contains_key(&name) {
            name.insert(0, '_');
        }
        self.insert(&name, SymbolKind::Fresh { index })
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn fresh_count(&self) -> u32 {
        self.next_fresh
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.symbols[s.index()].name
    }

    pub fn kind(&self, s: Sym) -> SymbolKind {
        self.symbols[s.index()].kind
    }

    pub fn is_constant(&self, s: Sym) -> bool {
        self.kind(s).is_constant()
    }

    pub fn is_assoc(&self, s: Sym) -> bool {
        matches!(self.kind(s), SymbolKind::Assoc)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Sym, &Symbol)> {
        self.symbols.iter().enumerate().map(|(i, s)| (Sym(i as u32), s))
    }

    /// Original and unit constants in declaration order.
    pub fn original_constants(&self) -> Vec<Sym> {
        self.symbols()
            .filter(|(_, s)| matches!(s.kind, SymbolKind::Original | SymbolKind::Unit { .. }))
            .map(|(s, _)| s)
            .collect()
    }

    /// Fresh constants in allocation order.
    pub fn fresh_constants(&self) -> Vec<Sym> {
        let mut v: Vec<(u32, Sym)> = self
            .symbols()
            .filter_map(|(s, sym)| match sym.kind {
                SymbolKind::Fresh { index } => Some((index, s)),
                _ => None,
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, s)| s).collect()
    }

    pub fn word_to_string(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            return "λ".to_string();
        }
        w.iter().map(|&c| self.name(c)).collect::<Vec<_>>().join(" ")
    }

    pub fn display<'a>(&'a self, t: &'a Term) -> DisplayTerm<'a> {
        DisplayTerm { sig: self, term: t }
    }

    pub fn render(&self, t: &Term) -> String {
        self.display(t).to_string()
    }
}

/// A word over constants. The empty word is the identity of the free monoid.
pub type Word = Vec<Sym>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Sym),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn app(head: Sym, args: Vec<Term>) -> Term {
        Term::App(head, args)
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Term::Const(_))
    }

    pub fn as_const(&self) -> Option<Sym> {
        match self {
            Term::Const(c) => Some(*c),
            Term::App(..) => None,
        }
    }

    pub fn head(&self) -> Sym {
        match self {
            Term::Const(c) => *c,
            Term::App(h, _) => *h,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Const(_) => &[],
            Term::App(_, a) => a,
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Const(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Const(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Arguments as a word when they are all constants.
    pub fn const_args(&self) -> Option<Word> {
        match self {
            Term::Const(_) => None,
            Term::App(_, args) => args.iter().map(Term::as_const).collect(),
        }
    }

    /// The A-normal form: nested applications of the same associative
    /// symbol are spliced into their parent.
    pub fn assoc_flatten(&self, sig: &Signature) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::App(h, args) => {
                let assoc = sig.is_assoc(*h);
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    let a = a.assoc_flatten(sig);
                    match a {
                        Term::App(g, inner) if assoc && g == *h => out.extend(inner),
                        other => out.push(other),
                    }
                }
                Term::App(*h, out)
            }
        }
    }

    pub fn is_flattened(&self, sig: &Signature) -> bool {
        match self {
            Term::Const(_) => true,
            Term::App(h, args) => {
                let assoc = sig.is_assoc(*h);
                args.iter()
                    .all(|a| !(assoc && matches!(a, Term::App(g, _) if g == h)) && a.is_flattened(sig))
            }
        }
    }

    /// Every symbol occurrence in pre-order.
    pub fn symbols(&self, out: &mut Vec<Sym>) {
        match self {
            Term::Const(c) => out.push(*c),
            Term::App(h, args) => {
                out.push(*h);
                for a in args {
                    a.symbols(out);
                }
            }
        }
    }

    /// Builds `f(w)` from a word, collapsing to the letter when `|w| = 1`.
    pub fn from_word(f: Sym, w: &[Sym]) -> Term {
        debug_assert!(!w.is_empty());
        if w.len() == 1 {
            Term::Const(w[0])
        } else {
            Term::App(f, w.iter().map(|&c| Term::Const(c)).collect())
        }
    }
}

pub struct DisplayTerm<'a> {
    sig: &'a Signature,
    term: &'a Term,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Const(c) => write!(f, "{}", self.sig.name(*c)),
            Term::App(h, args) => {
                write!(f, "{}(", self.sig.name(*h))?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", DisplayTerm { sig: self.sig, term: a })?;
                }
                write!(f, ")")
            }
        }
    }
}
