//! Second phase: add the ground consequences of the theory axioms that the
//! completion needs: inverse names, the inverse table I(E') and the unit
//! table U(C).

use crate::error::{Error, Result};
use crate::flatten::{EquationSet, FlatEquation, FlatTerm};
use crate::order::OrderingConfig;
use crate::term::{Signature, Sym, TheorySig};
use crate::theory::{Mode, TheoryConfig};

#[derive(Debug, Clone)]
pub struct AugmentedProblem {
    /// E' ∪ I(E') ∪ U(C), without duplicates, in that order.
    pub s_e: Vec<FlatEquation>,
    /// E' after inverse naming.
    pub e_prime: Vec<FlatEquation>,
    /// The inverse tables, all theories together.
    pub inverse_table: Vec<FlatEquation>,
    /// The unit tables, all theories together.
    pub unit_table: Vec<FlatEquation>,
    /// Constants introduced by inverse naming.
    pub inverse_names: Vec<(Sym, Sym, Sym)>,
    /// The final constant set C.
    pub constants: Vec<Sym>,
}

/// Constants in naming order: originals by descending precedence, then
/// fresh constants in allocation order.
fn naming_order(sig: &Signature, ord: &OrderingConfig) -> Vec<Sym> {
    let mut v: Vec<Sym> = ord.precedence().to_vec();
    v.extend(sig.fresh_constants());
    v
}

/// C listed as: unit(s) first, then the rest of the naming order.
fn constant_listing(sig: &Signature, ord: &OrderingConfig, cfg: &TheoryConfig) -> Vec<Sym> {
    let mut v: Vec<Sym> = cfg.sigs.iter().map(|s| s.unit).collect();
    for c in naming_order(sig, ord) {
        if !v.contains(&c) {
            v.push(c);
        }
    }
    v
}

fn has_inverse_fact(e: &[FlatEquation], i: Sym, c: Sym) -> bool {
    let fact = |l: &FlatTerm, r: &FlatTerm| match (l, r) {
        (FlatTerm::App(h, w), FlatTerm::Const(d)) if *h == i && w.len() == 1 => w[0] == c || *d == c,
        _ => false,
    };
    e.iter().any(|x| fact(&x.lhs, &x.rhs) || fact(&x.rhs, &x.lhs))
}

/// Inverse facts `i(c) = d` present in `e`, as pairs (c, d).
fn inverse_facts(e: &[FlatEquation], i: Sym) -> Vec<(Sym, Sym)> {
    let mut out = Vec::new();
    for x in e {
        for (l, r) in [(&x.lhs, &x.rhs), (&x.rhs, &x.lhs)] {
            if let (FlatTerm::App(h, w), FlatTerm::Const(d)) = (l, r) {
                if *h == i && w.len() == 1 {
                    out.push((w[0], *d));
                }
            }
        }
    }
    out
}

fn inverse_table(e: &[FlatEquation], th: &TheorySig, out: &mut EquationSet) {
    let i = th.inverse.expect("group theory");
    let k = FlatTerm::Const;
    out.insert(FlatEquation::new(FlatTerm::App(i, vec![th.unit]), k(th.unit)));
    let facts = inverse_facts(e, i);
    for &(m, n) in &facts {
        out.insert(FlatEquation::new(FlatTerm::App(i, vec![n]), k(m)));
    }
    for &(m, n) in &facts {
        out.insert(FlatEquation::new(FlatTerm::App(th.assoc, vec![m, n]), k(th.unit)));
        out.insert(FlatEquation::new(FlatTerm::App(th.assoc, vec![n, m]), k(th.unit)));
    }
}

fn unit_table(constants: &[Sym], th: &TheorySig, out: &mut EquationSet) {
    let k = FlatTerm::Const;
    for &c in constants {
        out.insert(FlatEquation::new(FlatTerm::App(th.assoc, vec![c, th.unit]), k(c)));
        out.insert(FlatEquation::new(FlatTerm::App(th.assoc, vec![th.unit, c]), k(c)));
    }
}

fn assemble(
    e_prime: Vec<FlatEquation>,
    inv: EquationSet,
    units: EquationSet,
    inverse_names: Vec<(Sym, Sym, Sym)>,
    constants: Vec<Sym>,
) -> AugmentedProblem {
    let mut all = EquationSet::default();
    for e in e_prime.iter().chain(inv.items()).chain(units.items()) {
        all.insert(e.clone());
    }
    AugmentedProblem {
        s_e: all.into_vec(),
        e_prime,
        inverse_table: inv.into_vec(),
        unit_table: units.into_vec(),
        inverse_names,
        constants,
    }
}

fn name_inverses(
    e_prime: &mut Vec<FlatEquation>,
    frozen_e: &[FlatEquation],
    frozen_c: &[Sym],
    th: &TheorySig,
    sig: &mut Signature,
    names: &mut Vec<(Sym, Sym, Sym)>,
) -> Result<()> {
    let i = th.inverse.expect("group theory");
    for &c in frozen_c {
        if c == th.unit || has_inverse_fact(frozen_e, i, c) {
            continue;
        }
        let m = sig.fresh_const()?;
        e_prime.push(FlatEquation::new(FlatTerm::App(i, vec![c]), FlatTerm::Const(m)));
        names.push((i, c, m));
    }
    Ok(())
}

pub fn phase2_group(
    e: &[FlatEquation],
    sig: &mut Signature,
    ord: &OrderingConfig,
    th: &TheorySig,
) -> Result<AugmentedProblem> {
    if th.inverse.is_none() {
        return Err(Error::UnsupportedMode("monoid".into()));
    }
    let cfg = TheoryConfig::group(*th)?;
    phase2_multigroup_inner(e, sig, ord, &cfg)
}

pub fn phase2_monoid(
    e: &[FlatEquation],
    sig: &mut Signature,
    ord: &OrderingConfig,
    th: &TheorySig,
) -> Result<AugmentedProblem> {
    let cfg = TheoryConfig::monoid(*th)?;
    let constants = constant_listing(sig, ord, &cfg);
    let mut units = EquationSet::default();
    unit_table(&constants, th, &mut units);
    sig.freeze();
    Ok(assemble(
        e.to_vec(),
        EquationSet::default(),
        units,
        Vec::new(),
        constants,
    ))
}

pub fn phase2_semigroup(e: &[FlatEquation], sig: &mut Signature, ord: &OrderingConfig) -> AugmentedProblem {
    let constants = naming_order(sig, ord);
    sig.freeze();
    assemble(
        e.to_vec(),
        EquationSet::default(),
        EquationSet::default(),
        Vec::new(),
        constants,
    )
}

pub fn phase2_multigroup(
    e: &[FlatEquation],
    sig: &mut Signature,
    ord: &OrderingConfig,
    sigs: &[TheorySig],
) -> Result<AugmentedProblem> {
    let cfg = TheoryConfig::multi_group(sigs.to_vec())?;
    phase2_multigroup_inner(e, sig, ord, &cfg)
}

// Naming runs theory by theory over the constants that existed before this
// phase; constants created here get no inverse names of their own.
fn phase2_multigroup_inner(
    e: &[FlatEquation],
    sig: &mut Signature,
    ord: &OrderingConfig,
    cfg: &TheoryConfig,
) -> Result<AugmentedProblem> {
    let frozen_c = naming_order(sig, ord);
    let frozen_e = e.to_vec();
    let mut e_prime = e.to_vec();
    let mut names = Vec::new();
    for th in &cfg.sigs {
        name_inverses(&mut e_prime, &frozen_e, &frozen_c, th, sig, &mut names)?;
    }
    let constants = constant_listing(sig, ord, cfg);
    let mut inv = EquationSet::default();
    let mut units = EquationSet::default();
    for th in &cfg.sigs {
        inverse_table(&e_prime, th, &mut inv);
    }
    for th in &cfg.sigs {
        unit_table(&constants, th, &mut units);
    }
    sig.freeze();
    Ok(assemble(e_prime, inv, units, names, constants))
}

/// Dispatches on the theory mode.
pub fn phase2(
    e: &[FlatEquation],
    sig: &mut Signature,
    ord: &OrderingConfig,
    cfg: &TheoryConfig,
) -> Result<AugmentedProblem> {
    match cfg.mode {
        Mode::Semigroup => Ok(phase2_semigroup(e, sig, ord)),
        Mode::Monoid => phase2_monoid(e, sig, ord, &cfg.sigs[0]),
        Mode::Group | Mode::MultiGroup => phase2_multigroup_inner(e, sig, ord, cfg),
    }
}

impl AugmentedProblem {
    /// Checks the structural guarantees of the phase: every non-unit
    /// constant that existed before augmentation has an inverse fact, the
    /// inverse table is closed, and the unit table covers C.
    pub fn check_invariants(&self, cfg: &TheoryConfig, before: &[Sym]) -> std::result::Result<(), String> {
        let k = FlatTerm::Const;
        for th in &cfg.sigs {
            for &c in &self.constants {
                for e in [
                    FlatEquation::new(FlatTerm::App(th.assoc, vec![c, th.unit]), k(c)),
                    FlatEquation::new(FlatTerm::App(th.assoc, vec![th.unit, c]), k(c)),
                ] {
                    if !self.s_e.iter().any(|x| x.same_as(&e)) {
                        return Err(format!("missing unit entry for constant #{}", c.0));
                    }
                }
            }
            let Some(i) = th.inverse else { continue };
            for &c in before {
                if c != th.unit && !has_inverse_fact(&self.e_prime, i, c) {
                    return Err(format!("constant #{} has no inverse fact", c.0));
                }
            }
            for (m, n) in inverse_facts(&self.e_prime, i) {
                for e in [
                    FlatEquation::new(FlatTerm::App(i, vec![n]), k(m)),
                    FlatEquation::new(FlatTerm::App(th.assoc, vec![m, n]), k(th.unit)),
                    FlatEquation::new(FlatTerm::App(th.assoc, vec![n, m]), k(th.unit)),
                ] {
                    if !self.s_e.iter().any(|x| x.same_as(&e)) {
                        return Err("inverse table is not closed".into());
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::problem::parse_problem;
    use crate::flatten::phase1;

    fn run(src: &str) -> (Signature, AugmentedProblem) {
        let p = parse_problem(src).unwrap();
        let mut sig = p.sig.clone();
        let ord = p.ordering().unwrap();
        let cfg = p.theory.clone();
        let p1 = phase1(&p.equation_terms(), &mut sig, &cfg).unwrap();
        let before = naming_order(&sig, &ord);
        let aug = phase2(&p1.equations, &mut sig, &ord, &cfg).unwrap();
        aug.check_invariants(&cfg, &before).unwrap();
        (sig, aug)
    }

    fn render(sig: &Signature, v: &[FlatEquation]) -> Vec<String> {
        v.iter().map(|e| e.render(sig)).collect()
    }

    #[test]
    fn running_example_tables() {
        let (sig, aug) = run("theory group f i 1\nfun h 1\nconst a b\n\
             eq f(a,a) = f(h(a),f(i(h(a)),1))\neq f(a,h(a)) = b\neq f(i(a),b) = b\n");
        let e = render(&sig, &aug.e_prime);
        assert_eq!(&e[5..], ["i(b) = c3", "i(c1) = c4"]);
        assert_eq!(
            render(&sig, &aug.inverse_table),
            [
                "i(1) = 1",
                "i(c2) = a",
                "i(c3) = b",
                "i(c4) = c1",
                "f(a,c2) = 1",
                "f(c2,a) = 1",
                "f(b,c3) = 1",
                "f(c3,b) = 1",
                "f(c1,c4) = 1",
                "f(c4,c1) = 1",
            ]
        );
        assert_eq!(aug.unit_table.len(), 13);
        assert_eq!(aug.constants.len(), 7);
    }

    #[test]
    fn intro_example_tables() {
        let (sig, aug) = run("theory group f i 1\nfun h 1\nconst a b\n\
             eq f(h(a),h(a)) = 1\neq i(h(a)) = b\n");
        assert_eq!(
            render(&sig, &aug.e_prime),
            ["h(a) = c1", "f(c1,c1) = 1", "i(c1) = b", "i(a) = c2"]
        );
        assert_eq!(
            render(&sig, &aug.inverse_table),
            [
                "i(1) = 1",
                "i(b) = c1",
                "i(c2) = a",
                "f(c1,b) = 1",
                "f(b,c1) = 1",
                "f(a,c2) = 1",
                "f(c2,a) = 1",
            ]
        );
    }

    #[test]
    fn lone_unit() {
        let (sig, aug) = run("theory group f i 1\n");
        assert_eq!(render(&sig, &aug.s_e), ["i(1) = 1", "f(1,1) = 1"]);
        let (sig, aug) = run("theory monoid f 1\n");
        assert_eq!(render(&sig, &aug.s_e), ["f(1,1) = 1"]);
    }

    #[test]
    fn monoid_unit_table() {
        let (_, aug) = run("theory monoid f 1\nconst a b c d\neq f(a,b) = a\neq f(b,c) = b\neq c = d\n");
        assert_eq!(aug.unit_table.len(), 9);
        assert_eq!(aug.s_e.len(), 12);
    }

    #[test]
    fn monoid_table_ignores_free_symbols() {
        let (sig, aug) = run("theory monoid f 1\nassoc g\nconst a b\neq g(a,b) = g(b,a)\n");
        assert!(aug.unit_table.iter().all(|e| e.lhs.render(&sig).starts_with("f(")));
    }

    #[test]
    fn semigroup_is_identity() {
        let (sig, aug) = run("assoc f\nconst a b\neq f(a,b,a) = f(b,a,b)\n");
        assert_eq!(render(&sig, &aug.s_e), ["f(a,b,a) = f(b,a,b)"]);
    }

    #[test]
    fn multi_group_naming() {
        let (sig, aug) = run("theory group f i_f 1_f\ntheory group g i_g 1_g\nfun h 1\nconst a b\n\
             eq f(a,b) = a\neq f(b,a) = b\neq g(a,b) = g(b,a)\neq h(a) = b\n");
        assert_eq!(
            render(&sig, &aug.e_prime[4..]),
            [
                "i_f(a) = c1",
                "i_f(b) = c2",
                "i_f(1_g) = c3",
                "i_g(a) = c4",
                "i_g(b) = c5",
                "i_g(1_f) = c6"
            ]
        );
        let inv = render(&sig, &aug.inverse_table);
        for want in [
            "i_f(1_f) = 1_f",
            "i_f(c3) = 1_g",
            "f(1_g,c3) = 1_f",
            "i_g(c6) = 1_f",
            "g(c6,1_f) = 1_g",
        ] {
            assert!(inv.contains(&want.to_string()), "{want}");
        }
        assert_eq!(inv.len(), 20);
        // both unit tables over the ten constants
        assert_eq!(aug.unit_table.len(), 2 * 19);
    }
}
