//! Normal forms under the completed rules together with the fixed theory
//! system, word-problem decisions, presentations and normal-form probes.

use std::collections::BTreeSet;

use crate::augment::AugmentedProblem;
use crate::completion::{CompletionResult, Rule, RuleSet, Status};
use crate::error::{Error, Result};
use crate::flatten::{ConstRegistry, FlatTerm};
use crate::order::OrderingConfig;
use crate::term::{Signature, Sym, Term, Word};
use crate::theory::{replace_child, root_redexes, Mode, RuleTag, TheoryConfig};

#[derive(Debug, Clone)]
pub struct CompletedSystem {
    pub sig: Signature,
    pub theory: TheoryConfig,
    pub ordering: OrderingConfig,
    pub rules: RuleSet,
    pub status: Status,
    pub registry: ConstRegistry,
}

/// Which rule a rewrite step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    Completed(u64),
    Theory(RuleTag),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: StepRule,
    pub result: Term,
}

impl CompletedSystem {
    pub fn new(
        sig: Signature,
        theory: TheoryConfig,
        ordering: OrderingConfig,
        result: &CompletionResult,
        registry: ConstRegistry,
    ) -> Self {
        let rules = result.rule_set(&sig);
        // E may identify the units of two theories; the theory rules then
        // have to match the unit's normal form instead.
        let mut theory = theory;
        for th in &mut theory.sigs {
            while let Some(r) = rules.const_rule(th.unit) {
                th.unit = r.rhs.as_const().expect("constant rule");
            }
        }
        CompletedSystem {
            sig,
            theory,
            ordering,
            rules,
            status: result.status,
            registry,
        }
    }

    pub fn rule(&self, id: u64) -> Option<&Rule> {
        self.rules.get(id)
    }

    /// Completed-rule rewrites at the root of `t`, leftmost first.
    fn completed_root_steps(&self, t: &Term, out: &mut Vec<RewriteStep>, first_only: bool) {
        match t {
            Term::Const(c) => {
                if let Some(r) = self.rules.const_rule(*c) {
                    out.push(RewriteStep {
                        rule: StepRule::Completed(r.id),
                        result: r.rhs.to_term(),
                    });
                }
            }
            Term::App(h, args) if self.sig.is_assoc(*h) => {
                for p in 0..args.len() {
                    let Term::Const(c) = args[p] else { continue };
                    for r in self.rules.starting_with(*h, c) {
                        let FlatTerm::App(_, u) = &r.lhs else { continue };
                        let end = p + u.len();
                        if end > args.len() || (0..u.len()).any(|k| args[p + k] != Term::Const(u[k])) {
                            continue;
                        }
                        let mut v = args[..p].to_vec();
                        let lt = r.rhs.letters(*h).expect("same head");
                        v.extend(lt.iter().map(|&x| Term::Const(x)));
                        v.extend_from_slice(&args[end..]);
                        let result = if v.len() == 1 {
                            v.pop().unwrap()
                        } else {
                            Term::App(*h, v)
                        };
                        out.push(RewriteStep {
                            rule: StepRule::Completed(r.id),
                            result,
                        });
                        if first_only {
                            return;
                        }
                    }
                }
            }
            Term::App(..) => {
                if let Some(ft) = FlatTerm::from_term(t) {
                    if let Some(r) = self.rules.dflat_rule(&ft) {
                        out.push(RewriteStep {
                            rule: StepRule::Completed(r.id),
                            result: r.rhs.to_term(),
                        });
                    }
                }
            }
        }
    }

    /// All rewrites at the root: completed rules first, then theory rules.
    pub fn root_steps(&self, t: &Term) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        self.completed_root_steps(t, &mut out, false);
        for (result, tag) in root_redexes(t, &self.theory) {
            out.push(RewriteStep {
                rule: StepRule::Theory(tag),
                result,
            });
        }
        out
    }

    fn first_root_step(&self, t: &Term) -> Option<RewriteStep> {
        let mut out = Vec::new();
        self.completed_root_steps(t, &mut out, true);
        if let Some(s) = out.pop() {
            return Some(s);
        }
        root_redexes(t, &self.theory)
            .into_iter()
            .next()
            .map(|(result, tag)| RewriteStep {
                rule: StepRule::Theory(tag),
                result,
            })
    }

    /// One leftmost-outermost step.
    pub fn step(&self, t: &Term) -> Option<RewriteStep> {
        if let Some(s) = self.first_root_step(t) {
            return Some(s);
        }
        if let Term::App(h, args) = t {
            for (k, a) in args.iter().enumerate() {
                if let Some(s) = self.step(a) {
                    return Some(RewriteStep {
                        rule: s.rule,
                        result: replace_child(&self.sig, *h, args, k, s.result),
                    });
                }
            }
        }
        None
    }

    /// Every one-step rewrite of `t`, at every position.
    pub fn all_steps(&self, t: &Term) -> Vec<RewriteStep> {
        let mut out = self.root_steps(t);
        if let Term::App(h, args) = t {
            for (k, a) in args.iter().enumerate() {
                for s in self.all_steps(a) {
                    out.push(RewriteStep {
                        rule: s.rule,
                        result: replace_child(&self.sig, *h, args, k, s.result),
                    });
                }
            }
        }
        out
    }

    /// The normal form of `t`, computed bottom-up.
    pub fn normalize(&self, t: &Term) -> Term {
        self.nf(&t.assoc_flatten(&self.sig))
    }

    fn nf(&self, t: &Term) -> Term {
        let t = match t {
            Term::Const(_) => t.clone(),
            Term::App(h, args) => {
                let assoc = self.sig.is_assoc(*h);
                let mut v = Vec::with_capacity(args.len());
                for a in args {
                    match self.nf(a) {
                        Term::App(g, inner) if assoc && g == *h => v.extend(inner),
                        x => v.push(x),
                    }
                }
                Term::App(*h, v)
            }
        };
        match self.first_root_step(&t) {
            Some(s) => self.nf(&s.result),
            None => t,
        }
    }

    /// Leftmost-outermost normalization with every intermediate term; the
    /// first entry is the flattened input.
    pub fn normalize_traced(&self, t: &Term) -> (Term, Vec<(Term, StepRule)>) {
        let mut cur = t.assoc_flatten(&self.sig);
        let mut trace = Vec::new();
        while let Some(s) = self.step(&cur) {
            trace.push((cur, s.rule));
            cur = s.result;
        }
        (cur, trace)
    }

    /// Normalization that picks the redex to contract with `choose`.
    pub fn normalize_with(&self, t: &Term, choose: &mut dyn FnMut(usize) -> usize) -> Term {
        let mut cur = t.assoc_flatten(&self.sig);
        loop {
            let mut steps = self.all_steps(&cur);
            if steps.is_empty() {
                return cur;
            }
            let k = choose(steps.len()) % steps.len();
            cur = steps.swap_remove(k).result;
        }
    }

    pub fn decide_eq(&self, s: &Term, t: &Term) -> Result<bool> {
        if self.status != Status::Completed {
            return Err(Error::Undecided);
        }
        Ok(self.normalize(s) == self.normalize(t))
    }

    /// Renders a rewrite trace as `t0 -> t1 -> ... -> nf`.
    pub fn render_trace(&self, trace: &[(Term, StepRule)], nf: &Term) -> Vec<String> {
        trace
            .iter()
            .map(|(t, _)| self.sig.render(t))
            .chain(std::iter::once(self.sig.render(nf)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<Sym>,
    /// Word pairs; the unit is the empty word.
    pub relations: Vec<(Word, Word)>,
}

impl MonoidPresentation {
    pub fn render_relations(&self, sig: &Signature) -> Vec<String> {
        self.relations
            .iter()
            .map(|(l, r)| format!("{} = {}", sig.word_to_string(l), sig.word_to_string(r)))
            .collect()
    }

    pub fn render_generators(&self, sig: &Signature) -> Vec<String> {
        self.generators.iter().map(|&g| sig.name(g).to_string()).collect()
    }
}

/// Generators and relations for the group presented by the products in
/// S(E) outside the unit table.
pub fn extract_presentation(p: &AugmentedProblem, cfg: &TheoryConfig) -> Result<MonoidPresentation> {
    if cfg.mode != Mode::Group {
        return Err(Error::UnsupportedMode(cfg.mode.to_string()));
    }
    let th = cfg.sigs[0];
    let as_word = |t: &FlatTerm| -> Word {
        match t {
            FlatTerm::Const(c) if *c == th.unit => Vec::new(),
            FlatTerm::Const(c) => vec![*c],
            FlatTerm::App(_, w) => w.iter().copied().filter(|&c| c != th.unit).collect(),
        }
    };
    let headed = |t: &FlatTerm| matches!(t, FlatTerm::App(f, _) if *f == th.assoc);
    let mut relations = Vec::new();
    let mut seen = BTreeSet::new();
    for e in &p.s_e {
        if !(headed(&e.lhs) || headed(&e.rhs)) || p.unit_table.iter().any(|u| u.same_as(e)) {
            continue;
        }
        let (l, r) = (as_word(&e.lhs), as_word(&e.rhs));
        seen.extend(l.iter().chain(&r).copied());
        relations.push((l, r));
    }
    let generators = p.constants.iter().copied().filter(|c| seen.contains(c)).collect();
    Ok(MonoidPresentation { generators, relations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForms {
    /// Irreducible words by length, then in generation order.
    pub words: Vec<Word>,
    /// Whether the longest length still contributed a word.
    pub grew_at_max: bool,
}

/// Irreducible words over `gens` up to length `max_len` under the
/// completed rules, read as a string rewriting system for `f`.
pub fn enumerate_normal_forms(cs: &CompletedSystem, f: Sym, gens: &[Sym], max_len: usize) -> NormalForms {
    let letters: Vec<Sym> = gens
        .iter()
        .copied()
        .filter(|&g| cs.rules.const_rule(g).is_none())
        .collect();
    let lhs_words: Vec<&[Sym]> = cs
        .rules
        .with_head(f)
        .filter_map(|r| r.assoc_lhs(&cs.sig).map(|(_, w)| w))
        .collect();
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    let mut grew_at_max = max_len == 0;
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &letters {
                let mut x = w.clone();
                x.push(g);
                if !lhs_words.iter().any(|u| x.ends_with(u)) {
                    next.push(x);
                }
            }
        }
        if len == max_len {
            grew_at_max = !next.is_empty();
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    NormalForms { words, grew_at_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::problem::{parse_problem, parse_term_with};
    use crate::pipeline::Pipeline;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pipeline(src: &str) -> Pipeline {
        Pipeline::run(&parse_problem(src).unwrap(), Default::default()).unwrap()
    }

    fn t(p: &Pipeline, s: &str) -> Term {
        parse_term_with(&p.system.sig, s).unwrap()
    }

    const RUNNING: &str = "theory group f i 1\nfun h 1\nconst a b\n\
        eq f(a,a) = f(h(a),f(i(h(a)),1))\neq f(a,h(a)) = b\neq f(i(a),b) = b\n";
    const DIHEDRAL: &str = "theory group f i 1\nfun h 1\nconst a\n\
        eq f(a,a,a) = 1\neq f(h(a),h(a)) = 1\neq f(a,h(a),a,h(a)) = 1\n";

    #[test]
    fn running_example_query() {
        let p = pipeline(RUNNING);
        let cs = &p.system;
        let q = t(&p, "i(i(f(h(a),f(i(b),a))))");
        assert_eq!(cs.sig.render(&cs.normalize(&q)), "1");
        assert!(cs.decide_eq(&q, &t(&p, "1")).unwrap());
        let (nf, trace) = cs.normalize_traced(&q);
        assert_eq!(cs.sig.render(&nf), "1");
        assert!(!trace.is_empty());
    }

    #[test]
    fn irreducible_constant() {
        let p = pipeline(RUNNING);
        let b = t(&p, "b");
        assert_eq!(p.system.normalize(&b), b);
    }

    #[test]
    fn monoid_trace() {
        let p = pipeline("theory monoid f 1\nconst a b c d\neq f(a,b) = a\neq f(b,c) = b\neq c = d\n");
        let cs = &p.system;
        let (nf, trace) = cs.normalize_traced(&t(&p, "f(a,c,1,d)"));
        assert_eq!(
            cs.render_trace(&trace, &nf),
            ["f(a,c,1,d)", "f(a,c,d)", "f(a,d,d)", "f(a,d)", "a"]
        );
    }

    #[test]
    fn diverged_system_is_undecided() {
        let opts = crate::completion::CompletionOptions {
            fuel: 300,
            ..Default::default()
        };
        let p = Pipeline::run(
            &parse_problem("assoc f\nconst a b\neq f(a,b,a) = f(b,a,b)\n").unwrap(),
            opts,
        )
        .unwrap();
        let a = t(&p, "a");
        assert_eq!(p.system.decide_eq(&a, &a), Err(Error::Undecided));
    }

    #[test]
    fn dihedral_presentation_and_normal_forms() {
        let p = pipeline(DIHEDRAL);
        let sig = &p.system.sig;
        let pres = extract_presentation(&p.augmented, &p.problem.theory).unwrap();
        assert_eq!(pres.render_generators(sig), ["a", "c1", "c2", "c3"]);
        let mut rels = pres.render_relations(sig);
        rels.sort();
        let mut want = vec![
            "a c2 = λ",
            "c2 a = λ",
            "c1 c3 = λ",
            "c3 c1 = λ",
            "a a a = λ",
            "c1 c1 = λ",
            "a c1 a c1 = λ",
        ];
        want.sort();
        assert_eq!(rels, want);
        let f = p.problem.theory.sigs[0].assoc;
        let nfs = enumerate_normal_forms(&p.system, f, &pres.generators, 6);
        let mut shown: Vec<String> = nfs.words.iter().map(|w| sig.word_to_string(w)).collect();
        shown.sort();
        assert_eq!(shown, ["a", "a c3", "c2", "c3", "c3 a", "λ"]);
        assert!(!nfs.grew_at_max);
        let zero = enumerate_normal_forms(&p.system, f, &pres.generators, 0);
        assert_eq!(zero.words, vec![Vec::<Sym>::new()]);
    }

    #[test]
    fn presentation_needs_a_group() {
        let p = pipeline("theory monoid f 1\nconst a\n");
        assert!(matches!(
            extract_presentation(&p.augmented, &p.problem.theory),
            Err(Error::UnsupportedMode(_))
        ));
        let p = pipeline("theory group f i 1\nconst a\n");
        let pres = extract_presentation(&p.augmented, &p.problem.theory).unwrap();
        // only the inverse table of a: a c1 = λ, c1 a = λ
        assert_eq!(pres.relations.len(), 2);
        let p = pipeline("theory group f i 1\n");
        let pres = extract_presentation(&p.augmented, &p.problem.theory).unwrap();
        assert!(pres.relations.is_empty() && pres.generators.is_empty());
    }

    #[test]
    fn two_disjoint_groups() {
        let p = pipeline(
            "theory group f i_f 1_f\ntheory group g i_g 1_g\nfun h 1\nconst a b\n\
             eq f(a,b) = a\neq f(b,a) = b\neq g(a,b) = g(b,a)\neq h(a) = b\n",
        );
        let cs = &p.system;
        let rules: Vec<String> = p.completion.rules.iter().map(|r| r.render(&cs.sig)).collect();
        for want in ["a -> 1_f", "b -> 1_f", "c4 -> c6", "c5 -> c6", "i_g(c6) -> 1_f"] {
            assert!(rules.contains(&want.to_string()), "{want} not in {rules:?}");
        }
        let l = t(&p, "g(f(a,a),h(b))");
        assert_eq!(cs.sig.render(&cs.normalize(&l)), "g(1_f,1_f)");
        assert!(cs.decide_eq(&l, &t(&p, "g(b,f(a,1_f))")).unwrap());
    }

    #[test]
    fn random_strategies_agree() {
        let p = pipeline(RUNNING);
        let cs = &p.system;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in ["f(i(f(a,b)),h(a),i(i(b)))", "i(f(h(a),a,i(b)))", "h(f(a,i(a),b))"] {
            let x = t(&p, s);
            let want = cs.normalize(&x);
            for _ in 0..20 {
                let got = cs.normalize_with(&x, &mut |n| rng.gen_range(0..n));
                assert_eq!(got, want, "{s}");
            }
        }
    }
}
