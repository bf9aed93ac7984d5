#![allow(dead_code)]

use std::path::Path;

use ccgroup::cli::problem::{parse_problem, Problem};
use ccgroup::completion::CompletionOptions;
use ccgroup::pipeline::Pipeline;
use ccgroup::term::{Signature, Sym, SymbolKind, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub const GOLDEN: [&str; 6] = ["intro", "running", "dihedral", "semigroup", "monoid", "multigroup"];

pub fn problem_text(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(format!("{name}.txt"));
    std::fs::read_to_string(p).expect("problem file")
}

pub fn problem(name: &str) -> Problem {
    parse_problem(&problem_text(name)).expect("parses")
}

pub fn pipeline(name: &str) -> Pipeline {
    Pipeline::run(&problem(name), CompletionOptions::default()).expect("runs")
}

/// A random ground term over the declared symbols and the original and
/// unit constants, with roughly `budget` symbols.
pub fn random_term(sig: &Signature, rng: &mut TestRng, budget: usize) -> Term {
    let consts = sig.original_constants();
    let funs: Vec<(Sym, SymbolKind)> = sig
        .symbols()
        .filter(|(_, s)| !s.kind.is_constant())
        .map(|(s, x)| (s, x.kind))
        .collect();
    gen(&consts, &funs, rng, budget)
}

fn gen(consts: &[Sym], funs: &[(Sym, SymbolKind)], rng: &mut TestRng, budget: usize) -> Term {
    if budget <= 1 || funs.is_empty() || rng.gen_bool(0.25) {
        return Term::Const(consts[rng.gen_range(0..consts.len())]);
    }
    let (h, kind) = funs[rng.gen_range(0..funs.len())];
    let n = match kind {
        SymbolKind::Function { arity } => arity,
        SymbolKind::Inverse { .. } => 1,
        _ => rng.gen_range(2..=3),
    };
    let share = (budget - 1) / n.max(1);
    let args = (0..n).map(|_| gen(consts, funs, rng, share.max(1))).collect();
    Term::App(h, args)
}

pub const MODES: [&str; 4] = ["group", "monoid", "semigroup", "multigroup"];

/// Source text of a random problem: up to three constants, one unary
/// symbol and one to three equations between small terms.
pub fn random_problem(mode: &str, rng: &mut TestRng) -> String {
    let max_consts = if mode == "multigroup" { 2 } else { 3 };
    let consts = ["a", "b", "c"][..rng.gen_range(1..=max_consts)].join(" ");
    let theory = match mode {
        "group" => "theory group f i 1\n",
        "monoid" => "theory monoid f 1\n",
        "semigroup" => "assoc f\n",
        "multigroup" => "theory group f i_f 1_f\ntheory group g i_g 1_g\n",
        _ => unreachable!(),
    };
    let mut src = format!("{theory}fun h 1\nconst {consts}\n");
    let sig = parse_problem(&src).expect("header parses").sig;
    for _ in 0..rng.gen_range(1..=3) {
        let (bl, br) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let l = random_term(&sig, rng, bl);
        let r = random_term(&sig, rng, br);
        src += &format!("eq {} = {}\n", sig.render(&l), sig.render(&r));
    }
    src
}
