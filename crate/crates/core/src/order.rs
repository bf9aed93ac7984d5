//! The ordering on constants and flat terms, and the (D, S, W) complexity
//! measure used as a termination witness for combined rewriting.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::term::{Signature, Sym, SymbolKind, Term, TheorySig};

const FRESH_BASE: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl From<Ordering> for TermOrder {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => TermOrder::Greater,
            Ordering::Less => TermOrder::Less,
            Ordering::Equal => TermOrder::Equal,
        }
    }
}

/// Total precedence on the original constants, greatest first. Fresh
/// constants are ranked above all of them by allocation index.
#[derive(Debug, Clone)]
pub struct OrderingConfig {
    precedence: Vec<Sym>,
    // rank[sym] = n0 - position, 0 when the symbol is not an original constant
    rank: Vec<u32>,
}

impl OrderingConfig {
    /// `given` lists original constants greatest first. Units may be omitted;
    /// missing units are appended in theory order, and any unit listed must
    /// come after every non-unit constant.
    pub fn new(sig: &Signature, given: Option<&[Sym]>, theories: &[TheorySig]) -> Result<Self> {
        let originals = sig.original_constants();
        let is_unit = |s: Sym| matches!(sig.kind(s), SymbolKind::Unit { .. });
        let units: Vec<Sym> = theories.iter().map(|t| t.unit).collect();
        let mut precedence: Vec<Sym> = match given {
            None => originals.iter().copied().filter(|&c| !is_unit(c)).collect(),
            Some(list) => {
                let mut seen = std::collections::HashSet::new();
                let mut saw_unit = false;
                for &c in list {
                    if !originals.contains(&c) {
                        return Err(Error::Precedence(format!(
                            "`{}` is not an original constant",
                            sig.name(c)
                        )));
                    }
                    if !seen.insert(c) {
                        return Err(Error::Precedence(format!("`{}` is listed twice", sig.name(c))));
                    }
                    if is_unit(c) {
                        saw_unit = true;
                    } else if saw_unit {
                        return Err(Error::Precedence(format!(
                            "unit constants must be below `{}`",
                            sig.name(c)
                        )));
                    }
                }
                for &c in &originals {
                    if !is_unit(c) && !seen.contains(&c) {
                        return Err(Error::Precedence(format!("`{}` is missing", sig.name(c))));
                    }
                }
                list.to_vec()
            }
        };
        for &u in &units {
            if !precedence.contains(&u) {
                precedence.push(u);
            }
        }
        for &c in &originals {
            if !precedence.contains(&c) {
                // a unit symbol not bound to any active theory
                precedence.push(c);
            }
        }
        let n0 = precedence.len() as u32;
        let mut rank = vec![0u32; sig.len()];
        for (pos, &c) in precedence.iter().enumerate() {
            rank[c.index()] = n0 - pos as u32;
        }
        Ok(OrderingConfig { precedence, rank })
    }

    pub fn precedence(&self) -> &[Sym] {
        &self.precedence
    }

    fn key(&self, sig: &Signature, c: Sym) -> Option<u64> {
        match sig.kind(c) {
            SymbolKind::Fresh { index } => Some(FRESH_BASE - index as u64),
            _ => match self.rank.get(c.index()) {
                Some(&r) if r > 0 => Some(r as u64),
                _ => None,
            },
        }
    }

    /// `Greater` means `a ≻ b`.
    pub fn cmp_const(&self, sig: &Signature, a: Sym, b: Sym) -> Result<Ordering> {
        let ka = self
            .key(sig, a)
            .ok_or_else(|| Error::UnknownConstant(sig.name(a).to_string()))?;
        let kb = self
            .key(sig, b)
            .ok_or_else(|| Error::UnknownConstant(sig.name(b).to_string()))?;
        Ok(ka.cmp(&kb))
    }

    /// Rank in the total precedence on all constants; the minimum weighs 1.
    pub fn weight(&self, sig: &Signature, c: Sym) -> u64 {
        let n0 = self.precedence.len() as u64;
        match sig.kind(c) {
            SymbolKind::Fresh { index } => n0 + sig.fresh_count() as u64 - index as u64 + 1,
            _ => self.rank.get(c.index()).copied().unwrap_or(0) as u64,
        }
    }

    /// Length-lexicographic comparison of words.
    pub fn llex_compare(&self, sig: &Signature, u: &[Sym], v: &[Sym]) -> Result<Ordering> {
        if u.len() != v.len() {
            return Ok(u.len().cmp(&v.len()));
        }
        for (&x, &y) in u.iter().zip(v) {
            match self.cmp_const(sig, x, y)? {
                Ordering::Equal => {}
                o => return Ok(o),
            }
        }
        Ok(Ordering::Equal)
    }

    pub fn term_compare(&self, sig: &Signature, s: &Term, t: &Term) -> TermOrder {
        match (s, t) {
            (Term::Const(a), Term::Const(b)) => match self.cmp_const(sig, *a, *b) {
                Ok(o) => o.into(),
                Err(_) => TermOrder::Incomparable,
            },
            (Term::App(..), Term::Const(_)) => TermOrder::Greater,
            (Term::Const(_), Term::App(..)) => TermOrder::Less,
            (Term::App(f, _), Term::App(g, _)) => {
                if s == t {
                    return TermOrder::Equal;
                }
                if f != g || !sig.is_assoc(*f) {
                    return TermOrder::Incomparable;
                }
                match (s.const_args(), t.const_args()) {
                    (Some(u), Some(v)) => match self.llex_compare(sig, &u, &v) {
                        Ok(o) => o.into(),
                        Err(_) => TermOrder::Incomparable,
                    },
                    _ => TermOrder::Incomparable,
                }
            }
        }
    }
}

/// The complexity triple. `d` is kept sorted in descending order, so the
/// derived lexicographic order on the struct is the lexicographic order of
/// the triple with the multiset extension on `d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure {
    pub d: Vec<(usize, usize)>,
    pub s: usize,
    pub w: u64,
}

pub fn measure(t: &Term, sig: &Signature, ord: &OrderingConfig, theories: &[TheorySig]) -> Measure {
    fn walk(t: &Term, sig: &Signature, ord: &OrderingConfig, theories: &[TheorySig], m: &mut Measure) {
        m.s += 1;
        match t {
            Term::Const(c) => m.w += ord.weight(sig, *c),
            Term::App(h, args) => {
                if let Some(th) = theories.iter().find(|th| th.inverse == Some(*h)) {
                    let below = match args.first() {
                        Some(Term::App(g, inner)) if *g == th.assoc => inner.len(),
                        _ => 0,
                    };
                    m.d.push((t.depth(), below));
                }
                for a in args {
                    walk(a, sig, ord, theories, m);
                }
            }
        }
    }
    let mut m = Measure {
        d: Vec::new(),
        s: 0,
        w: 0,
    };
    walk(t, sig, ord, theories, &mut m);
    m.d.sort_unstable_by(|a, b| b.cmp(a));
    m
}
