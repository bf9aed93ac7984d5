//! Brute-force bounded congruence closure, used as ground truth in tests.
//!
//! The universe holds every flat term up to a size bound over the declared
//! symbols and original constants, plus the subterms of the input
//! equations. Associativity is built in by working on flat terms; an
//! application of an associative symbol is congruent to another when some
//! split of each into prefix and suffix has pairwise equal classes. Unit
//! and inverse laws are instantiated on universe members. This module uses
//! nothing from the completion pipeline.

use rustc_hash::FxHashMap as HashMap;

use crate::error::{Error, Result};
use crate::term::{Signature, Sym, SymbolKind, Term, TheorySig};

/// Largest universe the oracle will build.
pub const UNIVERSE_LIMIT: usize = 400_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Const(Sym),
    App(Sym, Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Equal,
    NotDerivedAtBound,
}

#[derive(Debug, Clone)]
pub struct BoundedUniverse {
    sig: Signature,
    bound: usize,
    nodes: Vec<Node>,
    sizes: Vec<usize>,
    index: HashMap<Node, usize>,
    parent: Vec<usize>,
}

impl BoundedUniverse {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn term(&self, id: usize) -> Term {
        match &self.nodes[id] {
            Node::Const(c) => Term::Const(*c),
            Node::App(h, args) => Term::App(*h, args.iter().map(|&a| self.term(a)).collect()),
        }
    }

    /// Head symbol and argument ids; constants have no arguments. Argument
    /// ids are always smaller than the id itself.
    pub fn node(&self, id: usize) -> (Sym, &[usize]) {
        match &self.nodes[id] {
            Node::Const(c) => (*c, &[]),
            Node::App(h, args) => (*h, args),
        }
    }

    pub fn size(&self, id: usize) -> usize {
        self.sizes[id]
    }

    /// Ids of the enumerated terms of size at most `n`.
    pub fn ids_up_to(&self, n: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.sizes[i] <= n).collect()
    }

    pub fn id_of(&self, t: &Term) -> Option<usize> {
        let flat = t.assoc_flatten(&self.sig);
        self.lookup(&flat)
    }

    fn lookup(&self, t: &Term) -> Option<usize> {
        let node = match t {
            Term::Const(c) => Node::Const(*c),
            Term::App(h, args) => Node::App(*h, args.iter().map(|a| self.lookup(a)).collect::<Option<Vec<_>>>()?),
        };
        self.index.get(&node).copied()
    }

    pub fn class_of(&self, id: usize) -> usize {
        let mut x = id;
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn intern(&mut self, node: Node, size: usize) -> usize {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.sizes.push(size);
        self.parent.push(id);
        self.index.insert(node, id);
        id
    }

    /// Interns a flat term, its subterms and every contiguous argument
    /// block of its associative subterms.
    fn intern_term(&mut self, t: &Term) -> usize {
        match t {
            Term::Const(c) => self.intern(Node::Const(*c), 1),
            Term::App(h, args) => {
                let ids: Vec<usize> = args.iter().map(|a| self.intern_term(a)).collect();
                if self.sig.is_assoc(*h) {
                    for i in 0..ids.len() {
                        for j in i + 2..=ids.len() {
                            if j - i < ids.len() {
                                self.intern_block(*h, &ids[i..j]);
                            }
                        }
                    }
                }
                self.intern_block(*h, &ids)
            }
        }
    }

    fn intern_block(&mut self, h: Sym, ids: &[usize]) -> usize {
        let size = 1 + ids.iter().map(|&i| self.sizes[i]).sum::<usize>();
        self.intern(Node::App(h, ids.to_vec()), size)
    }

    /// The id of `f(ids)` read as a flat term: the element itself for one
    /// argument, the unit for none.
    fn block(&self, f: Sym, ids: &[usize], unit: Option<usize>) -> Option<usize> {
        match ids.len() {
            0 => unit,
            1 => Some(ids[0]),
            _ => self.index.get(&Node::App(f, ids.to_vec())).copied(),
        }
    }

    fn node_id(&self, n: Node) -> Option<usize> {
        self.index.get(&n).copied()
    }
}

fn enumerate(u: &mut BoundedUniverse, constants: &[Sym], bound: usize) -> Result<()> {
    let sig = u.sig.clone();
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); bound + 1];
    if bound == 0 {
        return Ok(());
    }
    for &c in constants {
        by_size[1].push(u.intern(Node::Const(c), 1));
    }
    let funs: Vec<(Sym, SymbolKind)> = sig
        .symbols()
        .filter(|(_, s)| !s.kind.is_constant())
        .map(|(s, x)| (s, x.kind))
        .collect();
    for n in 2..=bound {
        let mut made = Vec::new();
        for &(h, kind) in &funs {
            let (min, max, assoc) = match kind {
                SymbolKind::Function { arity } => (arity, arity, false),
                SymbolKind::Inverse { .. } => (1, 1, false),
                SymbolKind::Assoc => (2, n - 1, true),
                _ => unreachable!(),
            };
            let mut seqs = Vec::new();
            sequences(
                &by_size,
                &u.nodes,
                n - 1,
                min,
                max,
                assoc.then_some(h),
                &mut Vec::new(),
                &mut seqs,
            );
            for args in seqs {
                made.push(u.intern(Node::App(h, args), n));
                if u.nodes.len() > UNIVERSE_LIMIT {
                    return Err(Error::BoundTooLarge {
                        bound,
                        limit: UNIVERSE_LIMIT,
                    });
                }
            }
        }
        by_size[n] = made;
    }
    Ok(())
}

// Argument lists of total size `total` and length in [min, max]; for an
// associative head no argument may carry that head.
#[allow(clippy::too_many_arguments)]
fn sequences(
    by_size: &[Vec<usize>],
    nodes: &[Node],
    total: usize,
    min: usize,
    max: usize,
    assoc: Option<Sym>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if total == 0 {
        if cur.len() >= min {
            out.push(cur.clone());
        }
        return;
    }
    if cur.len() == max || total < min.saturating_sub(cur.len()) {
        return;
    }
    for s in 1..=total {
        for &id in &by_size[s] {
            if let (Some(f), Node::App(g, _)) = (assoc, &nodes[id]) {
                if *g == f {
                    continue;
                }
            }
            cur.push(id);
            sequences(by_size, nodes, total - s, min, max, assoc, cur, out);
            cur.pop();
        }
    }
}

/// Instances of the unit and inverse laws whose sides are both present.
fn axiom_instances(u: &BoundedUniverse, theories: &[TheorySig]) -> Vec<(usize, usize)> {
    let units: Vec<Option<usize>> = theories.iter().map(|th| u.node_id(Node::Const(th.unit))).collect();
    let mut out = Vec::new();
    for (id, node) in u.nodes.iter().enumerate() {
        let Node::App(h, args) = node else { continue };
        for (th, &unit) in theories.iter().zip(&units) {
            if *h == th.assoc {
                for p in 0..args.len() {
                    if Some(args[p]) == unit {
                        let mut rest = args.clone();
                        rest.remove(p);
                        if let Some(r) = u.block(*h, &rest, unit) {
                            out.push((id, r));
                        }
                    }
                }
                let Some(i) = th.inverse else { continue };
                // x i(x) and i(x) x, with x read as a run of arguments
                for p in 0..args.len() {
                    let Node::App(g, inner) = &u.nodes[args[p]] else {
                        continue;
                    };
                    if *g != i {
                        continue;
                    }
                    let x = inner[0];
                    let word: &[usize] = match &u.nodes[x] {
                        Node::App(g, xs) if g == h => xs,
                        _ => std::slice::from_ref(&inner[0]),
                    };
                    let n = word.len();
                    let mut runs = Vec::new();
                    if p >= n && args[p - n..p] == *word {
                        runs.push((p - n, p + 1));
                    }
                    if p + n < args.len() && args[p + 1..=p + n] == *word {
                        runs.push((p, p + n + 1));
                    }
                    for (lo, hi) in runs {
                        let mut rest = args[..lo].to_vec();
                        rest.extend_from_slice(&args[hi..]);
                        if let Some(r) = u.block(*h, &rest, unit) {
                            out.push((id, r));
                        }
                    }
                }
            } else if Some(*h) == th.inverse {
                let x = args[0];
                if Some(x) == unit {
                    out.push((id, x));
                }
                match &u.nodes[x] {
                    Node::App(g, inner) if *g == *h => out.push((id, inner[0])),
                    Node::App(g, inner) if *g == th.assoc => {
                        // i(w) as a flat word, with i(i(y)) read as y
                        let inv = |w: usize| -> Option<Vec<usize>> {
                            match &u.nodes[w] {
                                Node::App(k, ys) if k == h => match &u.nodes[ys[0]] {
                                    Node::App(k2, zs) if k2 == g => Some(zs.clone()),
                                    _ => Some(vec![ys[0]]),
                                },
                                _ => u.node_id(Node::App(*h, vec![w])).map(|iw| vec![iw]),
                            }
                        };
                        for j in 1..inner.len() {
                            let p = u.block(*g, &inner[..j], unit);
                            let s = u.block(*g, &inner[j..], unit);
                            let (Some(p), Some(s)) = (p, s) else { continue };
                            if let (Some(mut is), Some(ip)) = (inv(s), inv(p)) {
                                is.extend(ip);
                                if let Some(r) = u.block(*g, &is, unit) {
                                    out.push((id, r));
                                }
                            }
                        }
                        // the full reversal, in case every split leaves the bound
                        let rev: Option<Vec<usize>> =
                            inner.iter().rev().map(|&w| inv(w)).try_fold(Vec::new(), |mut acc, w| {
                                acc.extend(w?);
                                Some(acc)
                            });
                        if let Some(r) = rev.and_then(|w| u.block(*g, &w, unit)) {
                            out.push((id, r));
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Unary(Sym, usize),
    Pair(Sym, usize, usize),
    Plain(Sym, Vec<usize>),
}

/// Builds the universe and closes it under the equations, the theory laws
/// and congruence.
pub fn oracle_closure(
    eqs: &[(Term, Term)],
    sig: &Signature,
    theories: &[TheorySig],
    bound: usize,
) -> Result<BoundedUniverse> {
    oracle_closure_with(eqs, &[], sig, theories, bound)
}

/// As [`oracle_closure`], with extra terms added to the universe.
pub fn oracle_closure_with(
    eqs: &[(Term, Term)],
    extra: &[Term],
    sig: &Signature,
    theories: &[TheorySig],
    bound: usize,
) -> Result<BoundedUniverse> {
    oracle_closure_over(eqs, extra, sig, theories, bound, &sig.original_constants())
}

/// As [`oracle_closure_with`], enumerating only terms over `constants`.
/// Equalities found this way still hold in the full universe, so a smaller
/// constant set is a cheaper way to confirm a pair.
pub fn oracle_closure_over(
    eqs: &[(Term, Term)],
    extra: &[Term],
    sig: &Signature,
    theories: &[TheorySig],
    bound: usize,
    constants: &[Sym],
) -> Result<BoundedUniverse> {
    let mut u = BoundedUniverse {
        sig: sig.clone(),
        bound,
        nodes: Vec::new(),
        sizes: Vec::new(),
        index: HashMap::default(),
        parent: Vec::new(),
    };
    enumerate(&mut u, constants, bound)?;
    let mut pairs = Vec::new();
    for (s, t) in eqs {
        let a = u.intern_term(&s.assoc_flatten(sig));
        let b = u.intern_term(&t.assoc_flatten(sig));
        pairs.push((a, b));
    }
    for t in extra {
        u.intern_term(&t.assoc_flatten(sig));
    }
    pairs.extend(axiom_instances(&u, theories));
    for (a, b) in pairs {
        u.union(a, b);
    }

    let mut splits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); u.nodes.len()];
    for (id, node) in u.nodes.iter().enumerate() {
        if let Node::App(h, args) = node {
            if sig.is_assoc(*h) {
                for j in 1..args.len() {
                    if let (Some(p), Some(s)) = (u.block(*h, &args[..j], None), u.block(*h, &args[j..], None)) {
                        splits[id].push((p, s));
                    }
                }
            }
        }
    }
    loop {
        let mut changed = false;
        let mut seen: HashMap<Key, usize> = HashMap::with_capacity_and_hasher(2 * u.nodes.len(), Default::default());
        let mut keys = Vec::new();
        for (id, id_splits) in splits.iter().enumerate() {
            keys.clear();
            match &u.nodes[id] {
                Node::Const(_) => continue,
                // a split (p, s) of f(w) stands for f(p s); p and s are
                // themselves flat, so equal splits mean equal terms
                Node::App(h, _) if sig.is_assoc(*h) => {
                    let h = *h;
                    for &(p, s) in id_splits {
                        keys.push(Key::Pair(h, u.find(p), u.find(s)));
                    }
                }
                Node::App(h, args) if args.len() == 1 => {
                    let (h, a) = (*h, args[0]);
                    keys.push(Key::Unary(h, u.find(a)));
                }
                Node::App(h, args) => {
                    let (h, args) = (*h, args.clone());
                    keys.push(Key::Plain(h, args.iter().map(|&a| u.find(a)).collect()));
                }
            }
            for k in keys.drain(..) {
                match seen.get(&k) {
                    Some(&other) => changed |= u.union(id, other),
                    None => {
                        seen.insert(k, id);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for id in 0..u.parent.len() {
        u.find(id);
    }
    Ok(u)
}

pub fn oracle_decide(s: &Term, t: &Term, u: &BoundedUniverse) -> Result<OracleVerdict> {
    let a = u.id_of(s).ok_or_else(|| Error::OutsideUniverse(u.sig.render(s)))?;
    let b = u.id_of(t).ok_or_else(|| Error::OutsideUniverse(u.sig.render(t)))?;
    Ok(if u.same_class(a, b) {
        OracleVerdict::Equal
    } else {
        OracleVerdict::NotDerivedAtBound
    })
}
