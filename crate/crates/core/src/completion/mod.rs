//! Ground completion modulo associativity.
//!
//! A given-clause loop over flat equations. The passive queue is ordered by
//! size and then by age, so every queued equation is eventually selected.
//! Selected equations are normalized by the active rules, oriented, and
//! added; active rules whose left-hand side becomes reducible go back to
//! the queue, and word overlaps of the new rule with the active rules are
//! queued as new equations.
//!
//! Every equation carries an id. The inputs are numbered from 1 in the order
//! of the augmented problem; each inference creates a new id.

pub mod check;
pub mod rules;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use crate::augment::AugmentedProblem;
use crate::error::{Error, Result};
use crate::flatten::{FlatEquation, FlatTerm};
use crate::order::{OrderingConfig, TermOrder};
use crate::term::{Signature, Sym};
use crate::theory::TheoryConfig;

pub use rules::{Inference, Rule, RuleSet, Step};

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    pub fuel: u64,
    /// Skip overlaps with unit-table rules `f(c,1) -> c`, `f(1,c) -> c`.
    pub skip_unit_deduce: bool,
    pub record_trace: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            fuel: DEFAULT_FUEL,
            skip_unit_deduce: false,
            record_trace: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Completed,
    Diverged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Completed => "completed",
            Status::Diverged => "diverged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: u64,
    pub inference: Inference,
    pub premises: Vec<u64>,
    /// Id of the conclusion; for DELETE, of the removed equation.
    pub id: u64,
    pub equation: FlatEquation,
}

impl TraceEntry {
    /// `step RULE [premises] id: lhs = rhs`
    pub fn render(&self, sig: &Signature) -> String {
        let p: Vec<String> = self.premises.iter().map(|x| x.to_string()).collect();
        format!(
            "{} {} [{}] {}: {}",
            self.step,
            self.inference,
            p.join(" "),
            self.id,
            self.equation.render(sig)
        )
    }
}

#[derive(Debug, Clone)]
pub struct CompletionResult {
    pub status: Status,
    /// Final active rules in id order.
    pub rules: Vec<Rule>,
    pub steps_used: u64,
    pub stats: BTreeMap<Inference, u64>,
    pub trace: Vec<TraceEntry>,
    /// Every rule that was ever added to the active set, in order.
    pub rule_history: Vec<Rule>,
    pub passive_left: usize,
}

impl CompletionResult {
    pub fn rule_set(&self, sig: &Signature) -> RuleSet {
        RuleSet::from_rules(sig, self.rules.iter().cloned())
    }
}

/// All proper overlaps between the left-hand sides of two rules headed by
/// the same associative symbol, in both orders, followed by the equations
/// obtained when one left-hand side word strictly contains the other.
pub fn deduce(sig: &Signature, r1: &Rule, r2: &Rule) -> Vec<FlatEquation> {
    let (Some((f, x)), Some((g, y))) = (r1.assoc_lhs(sig), r2.assoc_lhs(sig)) else {
        return Vec::new();
    };
    if f != g {
        return Vec::new();
    }
    let mut out = Vec::new();
    overlaps(f, x, &r1.rhs, y, &r2.rhs, &mut out);
    if r1.id != r2.id || r1.lhs != r2.lhs {
        overlaps(f, y, &r2.rhs, x, &r1.rhs, &mut out);
        contained(f, x, &r1.rhs, y, &r2.rhs, &mut out);
        contained(f, y, &r2.rhs, x, &r1.rhs, &mut out);
    }
    out
}

// x = u1 u2, y = u2 u3 with all three nonempty: f(u1 t) = f(s u3).
fn overlaps(f: Sym, x: &[Sym], s: &FlatTerm, y: &[Sym], t: &FlatTerm, out: &mut Vec<FlatEquation>) {
    let ls = s.letters(f).expect("same head");
    let lt = t.letters(f).expect("same head");
    for k in 1..x.len().min(y.len()) {
        if x[x.len() - k..] == y[..k] {
            let mut left = x[..x.len() - k].to_vec();
            left.extend_from_slice(lt);
            let mut right = ls.to_vec();
            right.extend_from_slice(&y[k..]);
            out.push(FlatEquation::new(
                FlatTerm::from_word(f, left),
                FlatTerm::from_word(f, right),
            ));
        }
    }
}

// y occurs in x = u1 y u3 with u1 u3 nonempty: f(u1 t u3) = s.
fn contained(f: Sym, x: &[Sym], s: &FlatTerm, y: &[Sym], t: &FlatTerm, out: &mut Vec<FlatEquation>) {
    if y.len() >= x.len() {
        return;
    }
    let lt = t.letters(f).expect("same head");
    for p in 0..=x.len() - y.len() {
        if x[p..p + y.len()] == *y {
            let mut w = x[..p].to_vec();
            w.extend_from_slice(lt);
            w.extend_from_slice(&x[p + y.len()..]);
            out.push(FlatEquation::new(FlatTerm::from_word(f, w), s.clone()));
        }
    }
}

fn is_unit_rule(cfg: &TheoryConfig, r: &Rule) -> bool {
    let FlatTerm::App(f, w) = &r.lhs else {
        return false;
    };
    let Some(th) = cfg.theory_of_assoc(*f) else {
        return false;
    };
    match w.as_slice() {
        [x, u] if *u == th.unit => r.rhs == FlatTerm::Const(*x),
        [u, x] if *u == th.unit => r.rhs == FlatTerm::Const(*x),
        _ => false,
    }
}

struct State<'a> {
    sig: &'a Signature,
    ord: &'a OrderingConfig,
    cfg: &'a TheoryConfig,
    opts: CompletionOptions,
    active: RuleSet,
    passive: BinaryHeap<Reverse<(usize, u64)>>,
    passive_eqs: BTreeMap<u64, FlatEquation>,
    passive_keys: HashSet<(FlatTerm, FlatTerm)>,
    next_id: u64,
    used: u64,
    stats: BTreeMap<Inference, u64>,
    trace: Vec<TraceEntry>,
    history: Vec<Rule>,
}

impl State<'_> {
    fn fresh_id(&mut self) -> u64 {
        self.next_id += 1;
        self.next_id
    }

    fn log(&mut self, inference: Inference, premises: Vec<u64>, id: u64, eq: &FlatEquation) {
        self.used += 1;
        *self.stats.entry(inference).or_insert(0) += 1;
        if self.opts.record_trace {
            self.trace.push(TraceEntry {
                step: self.used,
                inference,
                premises,
                id,
                equation: eq.clone(),
            });
        }
    }

    fn push(&mut self, id: u64, eq: FlatEquation) {
        if !self.passive_keys.insert(eq.key()) {
            return;
        }
        let size = eq.lhs.size() + eq.rhs.size();
        self.passive.push(Reverse((size, id)));
        self.passive_eqs.insert(id, eq);
    }

    fn pop(&mut self) -> Option<(u64, FlatEquation)> {
        let Reverse((_, id)) = self.passive.pop()?;
        let eq = self.passive_eqs.remove(&id).unwrap();
        self.passive_keys.remove(&eq.key());
        Some((id, eq))
    }

    /// Normalizes both sides, logging one inference per rewrite step.
    fn contract(&mut self, mut id: u64, mut eq: FlatEquation) -> (u64, FlatEquation) {
        loop {
            let (step, on_left) = match self.active.step(self.sig, &eq.lhs) {
                Some(s) => (s, true),
                None => match self.active.step(self.sig, &eq.rhs) {
                    Some(s) => (s, false),
                    None => return (id, eq),
                },
            };
            if on_left {
                eq.lhs = step.result;
            } else {
                eq.rhs = step.result;
            }
            let nid = self.fresh_id();
            self.log(step.kind, vec![id, step.rule], nid, &eq);
            id = nid;
        }
    }

    fn orient(&self, eq: FlatEquation) -> Result<(FlatTerm, FlatTerm)> {
        match self.ord.term_compare(self.sig, &eq.lhs.to_term(), &eq.rhs.to_term()) {
            TermOrder::Greater => Ok((eq.lhs, eq.rhs)),
            TermOrder::Less => Ok((eq.rhs, eq.lhs)),
            TermOrder::Equal | TermOrder::Incomparable => Err(Error::Incomparable {
                lhs: eq.lhs.render(self.sig),
                rhs: eq.rhs.render(self.sig),
            }),
        }
    }

    fn process(&mut self, id: u64, eq: FlatEquation) -> Result<()> {
        let (id, eq) = self.contract(id, eq);
        if eq.lhs == eq.rhs {
            self.log(Inference::Delete, vec![id], id, &eq);
            return Ok(());
        }
        let (lhs, rhs) = self.orient(eq)?;
        let rule = Rule { id, lhs, rhs };
        self.history.push(rule.clone());
        self.active.insert(self.sig, rule.clone());
        self.interreduce(&rule);
        self.deduce_with(&rule);
        Ok(())
    }

    fn interreduce(&mut self, rule: &Rule) {
        let single = RuleSet::from_rules(self.sig, [rule.clone()]);
        for qid in self.active.ids() {
            if qid == rule.id {
                continue;
            }
            let q = self.active.get(qid).unwrap().clone();
            if RuleSet::rule_applies(self.sig, rule, &q.lhs) {
                self.active.remove(self.sig, qid);
                let step = single.step(self.sig, &q.lhs).expect("rule applies");
                let eq = FlatEquation::new(step.result, q.rhs);
                let nid = self.fresh_id();
                self.log(step.kind, vec![qid, rule.id], nid, &eq);
                if eq.lhs == eq.rhs {
                    self.log(Inference::Delete, vec![nid], nid, &eq);
                } else {
                    self.push(nid, eq);
                }
            } else if RuleSet::rule_applies(self.sig, rule, &q.rhs) {
                self.active.remove(self.sig, qid);
                let mut cur = q;
                while let Some(step) = self.active.step(self.sig, &cur.rhs) {
                    let nid = self.fresh_id();
                    let eq = FlatEquation::new(cur.lhs.clone(), step.result.clone());
                    self.log(step.kind, vec![cur.id, step.rule], nid, &eq);
                    cur = Rule {
                        id: nid,
                        lhs: cur.lhs,
                        rhs: step.result,
                    };
                }
                self.history.push(cur.clone());
                self.active.insert(self.sig, cur);
            }
        }
    }

    fn deduce_with(&mut self, rule: &Rule) {
        let Some((f, _)) = rule.assoc_lhs(self.sig) else {
            return;
        };
        if self.opts.skip_unit_deduce && is_unit_rule(self.cfg, rule) {
            return;
        }
        let partners: Vec<Rule> = self.active.with_head(f).cloned().collect();
        for q in partners {
            if self.opts.skip_unit_deduce && is_unit_rule(self.cfg, &q) {
                continue;
            }
            for eq in deduce(self.sig, rule, &q) {
                if eq.lhs == eq.rhs {
                    continue;
                }
                let nid = self.fresh_id();
                self.log(Inference::Deduce, vec![rule.id, q.id], nid, &eq);
                self.push(nid, eq);
            }
        }
    }
}

/// Runs completion on an augmented problem until the queue is empty or the
/// fuel is spent.
pub fn complete(
    p: &AugmentedProblem,
    sig: &Signature,
    ord: &OrderingConfig,
    cfg: &TheoryConfig,
    opts: CompletionOptions,
) -> Result<CompletionResult> {
    let mut st = State {
        sig,
        ord,
        cfg,
        opts,
        active: RuleSet::new(),
        passive: BinaryHeap::new(),
        passive_eqs: BTreeMap::new(),
        passive_keys: HashSet::new(),
        next_id: 0,
        used: 0,
        stats: Inference::ALL.iter().map(|&i| (i, 0)).collect(),
        trace: Vec::new(),
        history: Vec::new(),
    };
    for e in &p.s_e {
        let id = st.fresh_id();
        st.push(id, e.clone());
    }
    let status = loop {
        if st.used >= opts.fuel {
            break Status::Diverged;
        }
        let Some((id, eq)) = st.pop() else {
            break Status::Completed;
        };
        st.process(id, eq)?;
    };
    Ok(CompletionResult {
        status,
        rules: st.active.iter().cloned().collect(),
        steps_used: st.used,
        stats: st.stats,
        trace: st.trace,
        rule_history: st.history,
        passive_left: st.passive_eqs.len(),
    })
}
