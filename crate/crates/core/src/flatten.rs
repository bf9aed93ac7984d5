//! First phase: turn ground equations into constant, D-flat and A-flat
//! equations by naming non-flat subterms with fresh constants.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::Result;
use crate::term::{Signature, Sym, Term, Word};
use crate::theory::{theory_normalize, Mode, TheoryConfig};

/// A term of depth at most one whose arguments are constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatTerm {
    Const(Sym),
    App(Sym, Word),
}

impl FlatTerm {
    pub fn from_term(t: &Term) -> Option<FlatTerm> {
        match t {
            Term::Const(c) => Some(FlatTerm::Const(*c)),
            Term::App(h, _) => t.const_args().map(|w| FlatTerm::App(*h, w)),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            FlatTerm::Const(c) => Term::Const(*c),
            FlatTerm::App(h, w) => Term::App(*h, w.iter().map(|&c| Term::Const(c)).collect()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FlatTerm::Const(_) => 1,
            FlatTerm::App(_, w) => 1 + w.len(),
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, FlatTerm::Const(_))
    }

    pub fn as_const(&self) -> Option<Sym> {
        match self {
            FlatTerm::Const(c) => Some(*c),
            FlatTerm::App(..) => None,
        }
    }

    pub fn render(&self, sig: &Signature) -> String {
        sig.render(&self.to_term())
    }

    /// Letters this term contributes when spliced into a word of `f`.
    pub fn letters(&self, f: Sym) -> Option<&[Sym]> {
        match self {
            FlatTerm::Const(c) => Some(std::slice::from_ref(c)),
            FlatTerm::App(h, w) if *h == f => Some(w),
            FlatTerm::App(..) => None,
        }
    }

    /// `f(w)` for `|w| >= 2`, the letter itself for `|w| = 1`.
    pub fn from_word(f: Sym, mut w: Word) -> FlatTerm {
        debug_assert!(!w.is_empty());
        if w.len() == 1 {
            FlatTerm::Const(w.pop().unwrap())
        } else {
            FlatTerm::App(f, w)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqKind {
    CConst,
    DFlat,
    AFlat,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatEquation {
    pub lhs: FlatTerm,
    pub rhs: FlatTerm,
}

impl FlatEquation {
    pub fn new(lhs: FlatTerm, rhs: FlatTerm) -> Self {
        FlatEquation { lhs, rhs }
    }

    pub fn kind(&self) -> EqKind {
        match (&self.lhs, &self.rhs) {
            (FlatTerm::Const(_), FlatTerm::Const(_)) => EqKind::CConst,
            (FlatTerm::Const(_), _) | (_, FlatTerm::Const(_)) => EqKind::DFlat,
            _ => EqKind::AFlat,
        }
    }

    /// Key identifying the equation as an unordered pair.
    pub fn key(&self) -> (FlatTerm, FlatTerm) {
        if self.lhs <= self.rhs {
            (self.lhs.clone(), self.rhs.clone())
        } else {
            (self.rhs.clone(), self.lhs.clone())
        }
    }

    pub fn same_as(&self, other: &FlatEquation) -> bool {
        self.key() == other.key()
    }

    pub fn render(&self, sig: &Signature) -> String {
        format!("{} = {}", self.lhs.render(sig), self.rhs.render(sig))
    }
}

impl fmt::Display for EqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqKind::CConst => "constant",
            EqKind::DFlat => "D-flat",
            EqKind::AFlat => "A-flat",
        })
    }
}

/// Set of equations that keeps insertion order.
#[derive(Debug, Clone, Default)]
pub struct EquationSet {
    items: Vec<FlatEquation>,
    seen: HashSet<(FlatTerm, FlatTerm)>,
}

impl EquationSet {
    pub fn insert(&mut self, e: FlatEquation) -> bool {
        if self.seen.insert(e.key()) {
            self.items.push(e);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, e: &FlatEquation) -> bool {
        self.seen.contains(&e.key())
    }

    pub fn items(&self) -> &[FlatEquation] {
        &self.items
    }

    pub fn into_vec(self) -> Vec<FlatEquation> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Maps each named flat subterm to its fresh constant.
#[derive(Debug, Clone, Default)]
pub struct ConstRegistry {
    naming: HashMap<FlatTerm, Sym>,
    order: Vec<(FlatTerm, Sym)>,
}

impl ConstRegistry {
    pub fn get(&self, t: &FlatTerm) -> Option<Sym> {
        self.naming.get(t).copied()
    }

    fn name(&mut self, t: FlatTerm, sig: &mut Signature) -> Result<Sym> {
        if let Some(&c) = self.naming.get(&t) {
            return Ok(c);
        }
        let c = sig.fresh_const()?;
        self.naming.insert(t.clone(), c);
        self.order.push((t, c));
        Ok(c)
    }

    /// Named terms in allocation order.
    pub fn entries(&self) -> &[(FlatTerm, Sym)] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Phase1 {
    pub equations: Vec<FlatEquation>,
    pub registry: ConstRegistry,
}

fn name_subterm(t: &Term, sig: &mut Signature, reg: &mut ConstRegistry) -> Result<Sym> {
    match t {
        Term::Const(c) => Ok(*c),
        Term::App(..) => {
            let flat = flat_side(t, sig, reg)?;
            reg.name(flat, sig)
        }
    }
}

// Arguments are named bottom-up, left to right; the side itself is not.
fn flat_side(t: &Term, sig: &mut Signature, reg: &mut ConstRegistry) -> Result<FlatTerm> {
    match t {
        Term::Const(c) => Ok(FlatTerm::Const(*c)),
        Term::App(h, args) => {
            let mut w = Vec::with_capacity(args.len());
            for a in args {
                w.push(name_subterm(a, sig, reg)?);
            }
            Ok(FlatTerm::App(*h, w))
        }
    }
}

/// Flattening, theory normalization (skipped for semigroups), removal of
/// trivial equations, and naming of nested subterms.
pub fn phase1(eqs: &[(Term, Term)], sig: &mut Signature, cfg: &TheoryConfig) -> Result<Phase1> {
    let mut reg = ConstRegistry::default();
    let mut main = Vec::new();
    for (s, t) in eqs {
        let (s, t) = if cfg.mode == Mode::Semigroup {
            (s.assoc_flatten(sig), t.assoc_flatten(sig))
        } else {
            (theory_normalize(s, sig, cfg), theory_normalize(t, sig, cfg))
        };
        if s == t {
            continue;
        }
        let l = flat_side(&s, sig, &mut reg)?;
        let r = flat_side(&t, sig, &mut reg)?;
        match (&l, &r) {
            (FlatTerm::App(f, _), FlatTerm::App(g, _)) if !(f == g && sig.is_assoc(*f)) => {
                let c = reg.name(l, sig)?;
                main.push(FlatEquation::new(r, FlatTerm::Const(c)));
            }
            _ => main.push(FlatEquation::new(l, r)),
        }
    }
    let mut out = EquationSet::default();
    for (t, c) in reg.entries() {
        out.insert(FlatEquation::new(t.clone(), FlatTerm::Const(*c)));
    }
    for e in main {
        if e.lhs != e.rhs {
            out.insert(e);
        }
    }
    Ok(Phase1 {
        equations: out.into_vec(),
        registry: reg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::TheorySig;

    fn group_sig() -> (Signature, TheoryConfig) {
        let mut sig = Signature::new();
        let f = sig.add_assoc("f").unwrap();
        let i = sig.add_inverse("i", 0).unwrap();
        let one = sig.add_unit("1", 0).unwrap();
        sig.add_function("h", 1).unwrap();
        sig.add_function("g", 1).unwrap();
        sig.add_constant("a").unwrap();
        sig.add_constant("b").unwrap();
        let cfg = TheoryConfig::group(TheorySig {
            assoc: f,
            inverse: Some(i),
            unit: one,
        })
        .unwrap();
        (sig, cfg)
    }

    fn t(sig: &Signature, s: &str) -> Term {
        crate::cli::problem::parse_term_with(sig, s).unwrap()
    }

    fn rendered(sig: &Signature, p: &Phase1) -> Vec<String> {
        p.equations.iter().map(|e| e.render(sig)).collect()
    }

    #[test]
    fn running_example() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![
            (t(&sig, "f(a,a)"), t(&sig, "f(h(a),f(i(h(a)),1))")),
            (t(&sig, "f(a,h(a))"), t(&sig, "b")),
            (t(&sig, "f(i(a),b)"), t(&sig, "b")),
        ];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        assert_eq!(
            rendered(&sig, &p),
            ["h(a) = c1", "i(a) = c2", "f(a,a) = 1", "f(a,c1) = b", "f(c2,b) = b"]
        );
        let kinds: Vec<EqKind> = p.equations.iter().map(|e| e.kind()).collect();
        assert!(kinds.iter().all(|&k| k == EqKind::DFlat));
    }

    #[test]
    fn intro_example_shares_names() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![
            (t(&sig, "f(h(a),h(a))"), t(&sig, "1")),
            (t(&sig, "i(h(a))"), t(&sig, "b")),
        ];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        assert_eq!(rendered(&sig, &p), ["h(a) = c1", "f(c1,c1) = 1", "i(c1) = b"]);
        assert_eq!(p.registry.len(), 1);
    }

    #[test]
    fn trivial_equations_vanish() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![(t(&sig, "a"), t(&sig, "a")), (t(&sig, "f(a,i(a))"), t(&sig, "1"))];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        assert!(p.equations.is_empty());
    }

    #[test]
    fn mixed_heads_are_split() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![(t(&sig, "h(a)"), t(&sig, "g(b)"))];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        assert_eq!(rendered(&sig, &p), ["h(a) = c1", "g(b) = c1"]);
    }

    #[test]
    fn a_flat_equations_are_kept_whole() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![(t(&sig, "f(a,b,a)"), t(&sig, "f(b,h(a))"))];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        assert_eq!(rendered(&sig, &p), ["h(a) = c1", "f(a,b,a) = f(b,c1)"]);
        assert_eq!(p.equations[1].kind(), EqKind::AFlat);
    }

    #[test]
    fn rerunning_on_output_is_identity() {
        let (mut sig, cfg) = group_sig();
        let eqs = vec![
            (t(&sig, "f(a,a)"), t(&sig, "f(h(a),f(i(h(a)),1))")),
            (t(&sig, "f(a,h(a))"), t(&sig, "b")),
            (t(&sig, "f(i(a),b)"), t(&sig, "b")),
        ];
        let p = phase1(&eqs, &mut sig, &cfg).unwrap();
        let again: Vec<(Term, Term)> = p.equations.iter().map(|e| (e.lhs.to_term(), e.rhs.to_term())).collect();
        let before = sig.fresh_count();
        let q = phase1(&again, &mut sig, &cfg).unwrap();
        assert_eq!(q.equations, p.equations);
        assert_eq!(sig.fresh_count(), before);
    }
}
