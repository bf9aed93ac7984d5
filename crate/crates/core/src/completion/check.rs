//! Checks on a finished rule set: joinability of critical pairs and
//! inter-reducedness.

use crate::flatten::{FlatEquation, FlatTerm};
use crate::term::Signature;

use super::deduce;
use super::rules::{Rule, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub equation: FlatEquation,
    pub rules: (u64, u64),
}

/// Every result of rewriting `t` once with `r`, at any position.
fn all_steps(sig: &Signature, r: &Rule, t: &FlatTerm) -> Vec<FlatTerm> {
    let mut out = Vec::new();
    match (&r.lhs, t) {
        (FlatTerm::Const(c), FlatTerm::Const(d)) if c == d => out.push(r.rhs.clone()),
        (FlatTerm::Const(c), FlatTerm::App(h, w)) => {
            let d = r.rhs.as_const().expect("constant rule");
            for k in 0..w.len() {
                if w[k] == *c {
                    let mut w2 = w.clone();
                    w2[k] = d;
                    out.push(FlatTerm::App(*h, w2));
                }
            }
        }
        (FlatTerm::App(f, u), FlatTerm::App(g, w)) if f == g && sig.is_assoc(*f) => {
            let lt = r.rhs.letters(*f).expect("same head");
            if u.len() <= w.len() {
                for p in 0..=w.len() - u.len() {
                    if w[p..p + u.len()] == u[..] {
                        let mut w2 = w[..p].to_vec();
                        w2.extend_from_slice(lt);
                        w2.extend_from_slice(&w[p + u.len()..]);
                        out.push(FlatTerm::from_word(*f, w2));
                    }
                }
            }
        }
        (l, t) if l == t => out.push(r.rhs.clone()),
        _ => {}
    }
    out
}

/// Word overlaps between assoc rules, and every way one rule rewrites
/// inside the left-hand side of another.
pub fn critical_pairs(sig: &Signature, rules: &[Rule]) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for (k, r1) in rules.iter().enumerate() {
        for r2 in &rules[k..] {
            for eq in deduce(sig, r1, r2) {
                out.push(CriticalPair {
                    equation: eq,
                    rules: (r1.id, r2.id),
                });
            }
        }
    }
    for r1 in rules {
        for r2 in rules {
            if r1.id == r2.id || r1.assoc_lhs(sig).is_some() && r2.assoc_lhs(sig).is_some() {
                // assoc containment is covered by `deduce`
                continue;
            }
            for t in all_steps(sig, r2, &r1.lhs) {
                out.push(CriticalPair {
                    equation: FlatEquation::new(t, r1.rhs.clone()),
                    rules: (r1.id, r2.id),
                });
            }
        }
    }
    out
}

/// The first critical pair whose sides have different normal forms.
pub fn check_joinable(sig: &Signature, rules: &[Rule]) -> Result<(), String> {
    let rs = RuleSet::from_rules(sig, rules.iter().cloned());
    for cp in critical_pairs(sig, rules) {
        let l = rs.normalize(sig, &cp.equation.lhs);
        let r = rs.normalize(sig, &cp.equation.rhs);
        if l != r {
            return Err(format!(
                "critical pair {} of rules {} and {} is not joinable: {} vs {}",
                cp.equation.render(sig),
                cp.rules.0,
                cp.rules.1,
                l.render(sig),
                r.render(sig)
            ));
        }
    }
    Ok(())
}

/// Each left-hand side is reducible only by its own rule at the top, and
/// every right-hand side is irreducible.
pub fn check_reduced(sig: &Signature, rules: &[Rule]) -> Result<(), String> {
    let rs = RuleSet::from_rules(sig, rules.iter().cloned());
    for r in rules {
        if let Some(s) = rs.step_excluding(sig, &r.lhs, Some(r.id)) {
            return Err(format!("lhs of {} is reducible by rule {}", r.render(sig), s.rule));
        }
        if let Some(s) = rs.step(sig, &r.rhs) {
            return Err(format!("rhs of {} is reducible by rule {}", r.render(sig), s.rule));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::tests::run;
    use crate::completion::{CompletionOptions, Status};

    #[test]
    fn golden_systems_pass_both_checks() {
        for src in [
            "assoc f\nconst a b c d\neq f(a,b) = a\neq f(b,c) = b\neq c = d\n",
            "theory group f i 1\nfun h 1\nconst a b\neq f(h(a),h(a)) = 1\neq i(h(a)) = b\n",
            "theory monoid f 1\nconst a b c d\neq f(a,b) = a\neq f(b,c) = b\neq c = d\n",
        ] {
            let (sig, res) = run(src, CompletionOptions::default());
            assert_eq!(res.status, Status::Completed);
            check_reduced(&sig, &res.rules).unwrap();
            check_joinable(&sig, &res.rules).unwrap();
        }
    }

    #[test]
    fn detects_unjoinable_and_unreduced() {
        let (sig, res) = run(
            "assoc f\nconst a b c d\neq f(a,b) = a\neq f(b,c) = b\neq c = d\n",
            CompletionOptions::default(),
        );
        // drop f(a,d) -> a: the overlap of f(a,b) and f(b,d) is no longer joinable
        let partial: Vec<Rule> = res
            .rules
            .iter()
            .filter(|r| r.render(&sig) != "f(a,d) -> a")
            .cloned()
            .collect();
        assert!(check_joinable(&sig, &partial).is_err());
        let mut extra = res.rules.clone();
        let mut dup = extra[0].clone();
        dup.id = 999;
        extra.push(dup);
        assert!(check_reduced(&sig, &extra).is_err());
    }
}
