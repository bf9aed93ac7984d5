//! Theory configuration and normalization by the fixed convergent systems
//! for monoids, groups and disjoint unions of groups, on flat terms.

use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Signature, Sym, SymbolKind, Term, TheorySig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Semigroup,
    Monoid,
    Group,
    MultiGroup,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Semigroup => "semigroup",
            Mode::Monoid => "monoid",
            Mode::Group => "group",
            Mode::MultiGroup => "multi-group",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryConfig {
    pub mode: Mode,
    pub sigs: Vec<TheorySig>,
}

/// Names the rule of the fixed system that was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleTag {
    /// f(x,1) -> x
    UnitRight,
    /// f(1,x) -> x
    UnitLeft,
    /// i(1) -> 1
    InverseUnit,
    /// i(i(x)) -> x
    DoubleInverse,
    /// f(x,i(x)) -> 1
    CancelRight,
    /// f(i(x),x) -> 1
    CancelLeft,
    /// i(f(x,y)) -> f(i(y),i(x)), applied to the whole argument word at once
    InverseProduct,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleTag::UnitRight => "f(x,1) -> x",
            RuleTag::UnitLeft => "f(1,x) -> x",
            RuleTag::InverseUnit => "i(1) -> 1",
            RuleTag::DoubleInverse => "i(i(x)) -> x",
            RuleTag::CancelRight => "f(x,i(x)) -> 1",
            RuleTag::CancelLeft => "f(i(x),x) -> 1",
            RuleTag::InverseProduct => "i(f(x,y)) -> f(i(y),i(x))",
        };
        f.write_str(s)
    }
}

impl TheoryConfig {
    pub fn semigroup() -> Self {
        TheoryConfig {
            mode: Mode::Semigroup,
            sigs: Vec::new(),
        }
    }

    /// Infers the mode from the declared theories.
    pub fn from_sigs(sigs: Vec<TheorySig>) -> Result<Self> {
        for (k, a) in sigs.iter().enumerate() {
            for b in &sigs[k + 1..] {
                let sa = [Some(a.assoc), a.inverse, Some(a.unit)];
                let sb = [Some(b.assoc), b.inverse, Some(b.unit)];
                if sa.iter().flatten().any(|x| sb.iter().flatten().any(|y| x == y)) {
                    return Err(Error::Config("theory signatures must be pairwise disjoint".into()));
                }
            }
        }
        let mode = match sigs.len() {
            0 => Mode::Semigroup,
            1 if sigs[0].inverse.is_none() => Mode::Monoid,
            1 => Mode::Group,
            _ if sigs.iter().all(|s| s.inverse.is_some()) => Mode::MultiGroup,
            _ => return Err(Error::UnsupportedMode("mixed monoid and group theories".into())),
        };
        Ok(TheoryConfig { mode, sigs })
    }

    pub fn monoid(sig: TheorySig) -> Result<Self> {
        if sig.inverse.is_some() {
            return Err(Error::Config("a monoid has no inverse symbol".into()));
        }
        Self::from_sigs(vec![sig])
    }

    pub fn group(sig: TheorySig) -> Result<Self> {
        if sig.inverse.is_none() {
            return Err(Error::Config("a group needs an inverse symbol".into()));
        }
        Self::from_sigs(vec![sig])
    }

    pub fn multi_group(sigs: Vec<TheorySig>) -> Result<Self> {
        if sigs.iter().any(|s| s.inverse.is_none()) {
            return Err(Error::Config("every theory needs an inverse symbol".into()));
        }
        Self::from_sigs(sigs)
    }

    pub fn theory_of_assoc(&self, f: Sym) -> Option<&TheorySig> {
        self.sigs.iter().find(|s| s.assoc == f)
    }

    pub fn theory_of_inverse(&self, i: Sym) -> Option<&TheorySig> {
        self.sigs.iter().find(|s| s.inverse == Some(i))
    }

    pub fn is_unit(&self, c: Sym) -> bool {
        self.sigs.iter().any(|s| s.unit == c)
    }

    /// Associative symbols not bound to any theory.
    pub fn free_assoc_funs(&self, sig: &Signature) -> Vec<Sym> {
        sig.symbols()
            .filter(|(s, sym)| sym.kind == SymbolKind::Assoc && self.theory_of_assoc(*s).is_none())
            .map(|(s, _)| s)
            .collect()
    }
}

fn inv(i: Sym, t: Term) -> Term {
    Term::App(i, vec![t])
}

fn is_inverse_of(i: Sym, x: &Term, y: &Term) -> bool {
    matches!(x, Term::App(h, a) if *h == i && a.len() == 1 && a[0] == *y)
}

fn from_list(th: &TheorySig, mut v: Vec<Term>) -> Term {
    match v.len() {
        0 => Term::Const(th.unit),
        1 => v.pop().unwrap(),
        _ => Term::App(th.assoc, v),
    }
}

/// Unique normal form under the active fixed system, modulo associativity.
pub fn theory_normalize(t: &Term, sig: &Signature, cfg: &TheoryConfig) -> Term {
    if cfg.sigs.is_empty() {
        return t.assoc_flatten(sig);
    }
    norm(t, sig, cfg)
}

fn norm(t: &Term, sig: &Signature, cfg: &TheoryConfig) -> Term {
    match t {
        Term::Const(_) => t.clone(),
        Term::App(h, args) => {
            if let Some(th) = cfg.theory_of_assoc(*h) {
                let mut stack: Vec<Term> = Vec::with_capacity(args.len());
                for a in args {
                    let a = norm(a, sig, cfg);
                    let parts = match a {
                        Term::App(g, inner) if g == *h => inner,
                        other => vec![other],
                    };
                    for x in parts {
                        if x == Term::Const(th.unit) {
                            continue;
                        }
                        if let (Some(i), Some(top)) = (th.inverse, stack.last()) {
                            if is_inverse_of(i, &x, top) || is_inverse_of(i, top, &x) {
                                stack.pop();
                                continue;
                            }
                        }
                        stack.push(x);
                    }
                }
                return from_list(th, stack);
            }
            if let Some(th) = cfg.theory_of_inverse(*h) {
                let i = *h;
                let x = norm(&args[0], sig, cfg);
                return match x {
                    Term::Const(c) if c == th.unit => x,
                    Term::App(g, mut inner) if g == i => inner.pop().unwrap(),
                    Term::App(g, inner) if g == th.assoc => {
                        let rev = inner.into_iter().rev().map(|y| inv(i, y)).collect();
                        norm(&Term::App(g, rev), sig, cfg)
                    }
                    other => inv(i, other),
                };
            }
            let args: Vec<Term> = args.iter().map(|a| norm(a, sig, cfg)).collect();
            if sig.is_assoc(*h) {
                Term::App(*h, args).assoc_flatten(sig)
            } else {
                Term::App(*h, args)
            }
        }
    }
}

/// All applications of fixed-system rules at the root of `t`, in the order
/// a leftmost scan finds them.
pub fn root_redexes(t: &Term, cfg: &TheoryConfig) -> Vec<(Term, RuleTag)> {
    let mut out = Vec::new();
    let Term::App(h, args) = t else {
        return out;
    };
    if let Some(th) = cfg.theory_of_inverse(*h) {
        let i = *h;
        match &args[0] {
            Term::Const(c) if *c == th.unit => out.push((Term::Const(*c), RuleTag::InverseUnit)),
            Term::App(g, inner) if *g == i => out.push((inner[0].clone(), RuleTag::DoubleInverse)),
            Term::App(g, inner) if *g == th.assoc => {
                let rev = inner.iter().rev().map(|y| inv(i, y.clone())).collect();
                out.push((Term::App(*g, rev), RuleTag::InverseProduct));
            }
            _ => {}
        }
        return out;
    }
    let Some(th) = cfg.theory_of_assoc(*h) else {
        return out;
    };
    for j in 0..args.len() {
        if args[j] == Term::Const(th.unit) {
            let mut v = args.clone();
            v.remove(j);
            let tag = if j == 0 { RuleTag::UnitLeft } else { RuleTag::UnitRight };
            out.push((from_list(th, v), tag));
        }
        if let (Some(i), Some(next)) = (th.inverse, args.get(j + 1)) {
            let tag = if is_inverse_of(i, next, &args[j]) {
                Some(RuleTag::CancelRight)
            } else if is_inverse_of(i, &args[j], next) {
                Some(RuleTag::CancelLeft)
            } else {
                None
            };
            if let Some(tag) = tag {
                let mut v = args.clone();
                v.drain(j..j + 2);
                out.push((from_list(th, v), tag));
            }
        }
    }
    out
}

/// Replaces the child at `k` and restores the flattened-form invariant.
pub fn replace_child(sig: &Signature, head: Sym, args: &[Term], k: usize, new: Term) -> Term {
    let mut v = Vec::with_capacity(args.len() + 2);
    v.extend_from_slice(&args[..k]);
    match new {
        Term::App(g, inner) if g == head && sig.is_assoc(head) => v.extend(inner),
        other => v.push(other),
    }
    v.extend_from_slice(&args[k + 1..]);
    Term::App(head, v)
}

/// One leftmost-outermost step of the fixed system, if any redex exists.
pub fn theory_rules_ground_step(t: &Term, sig: &Signature, cfg: &TheoryConfig) -> Option<(Term, RuleTag)> {
    if let Some(r) = root_redexes(t, cfg).into_iter().next() {
        return Some(r);
    }
    if let Term::App(h, args) = t {
        for (k, a) in args.iter().enumerate() {
            if let Some((a2, tag)) = theory_rules_ground_step(a, sig, cfg) {
                return Some((replace_child(sig, *h, args, k, a2), tag));
            }
        }
    }
    None
}

/// Normalizes by repeatedly rewriting a redex picked by `choose` among all
/// redexes of the term. Used to exercise strategy independence.
pub fn normalize_with_strategy(
    t: &Term,
    sig: &Signature,
    cfg: &TheoryConfig,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Term {
    let mut cur = t.assoc_flatten(sig);
    loop {
        let mut all = Vec::new();
        collect_steps(&cur, sig, cfg, &mut all);
        if all.is_empty() {
            return cur;
        }
        let k = choose(all.len()) % all.len();
        cur = all.swap_remove(k);
    }
}

fn collect_steps(t: &Term, sig: &Signature, cfg: &TheoryConfig, out: &mut Vec<Term>) {
    for (r, _) in root_redexes(t, cfg) {
        out.push(r);
    }
    if let Term::App(h, args) = t {
        for (k, a) in args.iter().enumerate() {
            let mut inner = Vec::new();
            collect_steps(a, sig, cfg, &mut inner);
            for a2 in inner {
                out.push(replace_child(sig, *h, args, k, a2));
            }
        }
    }
}
