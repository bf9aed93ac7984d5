//! Oriented rules and an indexed rule set with single-step rewriting on
//! flat terms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::flatten::FlatTerm;
use crate::term::{Signature, Sym};

/// Inference names used in traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inference {
    Deduce,
    Simplify,
    Collapse,
    Compose,
    Delete,
}

impl Inference {
    pub const ALL: [Inference; 5] = [
        Inference::Deduce,
        Inference::Simplify,
        Inference::Collapse,
        Inference::Compose,
        Inference::Delete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Inference::Deduce => "DEDUCE",
            Inference::Simplify => "SIMPLIFY",
            Inference::Collapse => "COLLAPSE",
            Inference::Compose => "COMPOSE",
            Inference::Delete => "DELETE",
        }
    }
}

impl fmt::Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: u64,
    pub lhs: FlatTerm,
    pub rhs: FlatTerm,
}

impl Rule {
    pub fn render(&self, sig: &Signature) -> String {
        format!("{} -> {}", self.lhs.render(sig), self.rhs.render(sig))
    }

    /// Head and word of the left-hand side when it is headed by an
    /// associative symbol.
    pub fn assoc_lhs<'a>(&'a self, sig: &Signature) -> Option<(Sym, &'a [Sym])> {
        match &self.lhs {
            FlatTerm::App(f, w) if sig.is_assoc(*f) => Some((*f, w)),
            _ => None,
        }
    }
}

/// One rewrite step: the result, the rule used and how the step is named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub result: FlatTerm,
    pub rule: u64,
    pub kind: Inference,
}

/// Active rules indexed for matching. Iteration is in id order.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    rules: BTreeMap<u64, Rule>,
    consts: HashMap<Sym, u64>,
    dflat: HashMap<FlatTerm, u64>,
    // (head, first letter of the lhs word) -> rule ids
    by_first: HashMap<(Sym, Sym), BTreeSet<u64>>,
    by_head: HashMap<Sym, BTreeSet<u64>>,
}

impl RuleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rules(sig: &Signature, rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut s = Self::new();
        for r in rules {
            s.insert(sig, r);
        }
        s
    }

    pub fn insert(&mut self, sig: &Signature, r: Rule) {
        match &r.lhs {
            FlatTerm::Const(c) => {
                self.consts.insert(*c, r.id);
            }
            FlatTerm::App(f, w) if sig.is_assoc(*f) => {
                self.by_first.entry((*f, w[0])).or_default().insert(r.id);
                self.by_head.entry(*f).or_default().insert(r.id);
            }
            FlatTerm::App(..) => {
                self.dflat.insert(r.lhs.clone(), r.id);
            }
        }
        self.rules.insert(r.id, r);
    }

    pub fn remove(&mut self, sig: &Signature, id: u64) -> Option<Rule> {
        let r = self.rules.remove(&id)?;
        match &r.lhs {
            FlatTerm::Const(c) => {
                self.consts.remove(c);
            }
            FlatTerm::App(f, w) if sig.is_assoc(*f) => {
                if let Some(s) = self.by_first.get_mut(&(*f, w[0])) {
                    s.remove(&id);
                }
                if let Some(s) = self.by_head.get_mut(f) {
                    s.remove(&id);
                }
            }
            FlatTerm::App(..) => {
                self.dflat.remove(&r.lhs);
            }
        }
        Some(r)
    }

    pub fn get(&self, id: u64) -> Option<&Rule> {
        self.rules.get(&id)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn ids(&self) -> Vec<u64> {
        self.rules.keys().copied().collect()
    }

    /// Rules whose lhs is headed by the associative symbol `f`.
    pub fn with_head(&self, f: Sym) -> impl Iterator<Item = &Rule> {
        self.by_head
            .get(&f)
            .into_iter()
            .flat_map(|s| s.iter())
            .map(|id| &self.rules[id])
    }

    pub fn const_rule(&self, c: Sym) -> Option<&Rule> {
        self.consts.get(&c).map(|id| &self.rules[id])
    }

    /// Assoc rules with head `f` whose lhs word starts with `c`, in id order.
    pub fn starting_with(&self, f: Sym, c: Sym) -> impl Iterator<Item = &Rule> {
        self.by_first
            .get(&(f, c))
            .into_iter()
            .flat_map(|s| s.iter())
            .map(|id| &self.rules[id])
    }

    /// The rule whose lhs is the non-associative flat term `t`.
    pub fn dflat_rule(&self, t: &FlatTerm) -> Option<&Rule> {
        self.dflat.get(t).map(|id| &self.rules[id])
    }

    /// Leftmost occurrence of an assoc rule lhs in `w`, skipping `skip`.
    pub fn find_subword(&self, f: Sym, w: &[Sym], skip: Option<u64>) -> Option<(usize, &Rule)> {
        for p in 0..w.len() {
            let Some(ids) = self.by_first.get(&(f, w[p])) else {
                continue;
            };
            for id in ids {
                if Some(*id) == skip {
                    continue;
                }
                let r = &self.rules[id];
                let FlatTerm::App(_, u) = &r.lhs else { unreachable!() };
                if w.len() - p >= u.len() && w[p..p + u.len()] == u[..] {
                    return Some((p, r));
                }
            }
        }
        None
    }

    /// One rewrite step, constants before subwords. `skip` excludes a rule.
    pub fn step_excluding(&self, sig: &Signature, t: &FlatTerm, skip: Option<u64>) -> Option<Step> {
        let const_rule = |c: Sym| {
            self.consts
                .get(&c)
                .filter(|id| Some(**id) != skip)
                .map(|id| &self.rules[id])
        };
        match t {
            FlatTerm::Const(c) => const_rule(*c).map(|r| Step {
                result: r.rhs.clone(),
                rule: r.id,
                kind: Inference::Compose,
            }),
            FlatTerm::App(h, w) => {
                for (k, &c) in w.iter().enumerate() {
                    if let Some(r) = const_rule(c) {
                        let d = r.rhs.as_const().expect("constant rule");
                        let mut w2 = w.clone();
                        w2[k] = d;
                        return Some(Step {
                            result: FlatTerm::App(*h, w2),
                            rule: r.id,
                            kind: Inference::Collapse,
                        });
                    }
                }
                if sig.is_assoc(*h) {
                    let (p, r) = self.find_subword(*h, w, skip)?;
                    let FlatTerm::App(_, u) = &r.lhs else { unreachable!() };
                    let mut w2 = w[..p].to_vec();
                    w2.extend_from_slice(r.rhs.letters(*h).expect("same head"));
                    w2.extend_from_slice(&w[p + u.len()..]);
                    Some(Step {
                        result: FlatTerm::from_word(*h, w2),
                        rule: r.id,
                        kind: Inference::Simplify,
                    })
                } else {
                    let id = self.dflat.get(t).filter(|id| Some(**id) != skip)?;
                    Some(Step {
                        result: self.rules[id].rhs.clone(),
                        rule: *id,
                        kind: Inference::Collapse,
                    })
                }
            }
        }
    }

    pub fn step(&self, sig: &Signature, t: &FlatTerm) -> Option<Step> {
        self.step_excluding(sig, t, None)
    }

    pub fn normalize(&self, sig: &Signature, t: &FlatTerm) -> FlatTerm {
        let mut cur = t.clone();
        while let Some(s) = self.step(sig, &cur) {
            cur = s.result;
        }
        cur
    }

    /// Whether `r` rewrites somewhere inside `t`.
    pub fn rule_applies(sig: &Signature, r: &Rule, t: &FlatTerm) -> bool {
        match (&r.lhs, t) {
            (FlatTerm::Const(c), FlatTerm::Const(d)) => c == d,
            (FlatTerm::Const(c), FlatTerm::App(_, w)) => w.contains(c),
            (FlatTerm::App(f, u), FlatTerm::App(g, w)) if f == g && sig.is_assoc(*f) => {
                w.windows(u.len()).any(|x| x == &u[..])
            }
            (l, t) => l == t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Signature, Sym, Sym, [Sym; 4]) {
        let mut sig = Signature::new();
        let f = sig.add_assoc("f").unwrap();
        let h = sig.add_function("h", 1).unwrap();
        let a = sig.add_constant("a").unwrap();
        let b = sig.add_constant("b").unwrap();
        let c = sig.add_constant("c").unwrap();
        let d = sig.add_constant("d").unwrap();
        (sig, f, h, [a, b, c, d])
    }

    #[test]
    fn subword_and_constant_steps() {
        let (sig, f, h, [a, b, c, d]) = setup();
        let k = FlatTerm::Const;
        let rs = RuleSet::from_rules(
            &sig,
            [
                Rule {
                    id: 1,
                    lhs: FlatTerm::App(f, vec![a, b]),
                    rhs: k(a),
                },
                Rule {
                    id: 2,
                    lhs: k(c),
                    rhs: k(d),
                },
                Rule {
                    id: 3,
                    lhs: FlatTerm::App(h, vec![d]),
                    rhs: k(b),
                },
            ],
        );
        let t = FlatTerm::App(f, vec![b, a, b, b]);
        let s = rs.step(&sig, &t).unwrap();
        assert_eq!(s.result.render(&sig), "f(b,a,b)");
        assert_eq!(s.kind, Inference::Simplify);
        assert_eq!(rs.normalize(&sig, &t).render(&sig), "f(b,a)");
        assert_eq!(rs.normalize(&sig, &FlatTerm::App(h, vec![c])).render(&sig), "b");
        assert_eq!(rs.normalize(&sig, &FlatTerm::App(f, vec![a, b])), k(a));
        assert!(rs
            .step_excluding(&sig, &FlatTerm::App(f, vec![a, b]), Some(1))
            .is_none());
    }

    #[test]
    fn removal_updates_indexes() {
        let (sig, f, _, [a, b, ..]) = setup();
        let mut rs = RuleSet::from_rules(
            &sig,
            [Rule {
                id: 7,
                lhs: FlatTerm::App(f, vec![a, b]),
                rhs: FlatTerm::Const(a),
            }],
        );
        assert_eq!(rs.with_head(f).count(), 1);
        rs.remove(&sig, 7).unwrap();
        assert!(rs.step(&sig, &FlatTerm::App(f, vec![a, b])).is_none());
        assert_eq!(rs.with_head(f).count(), 0);
    }
}
