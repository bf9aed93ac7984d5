//! Unit laws only: the unit table replaces the inverse machinery.

use ccgroup::cli::problem::{parse_problem, parse_term_with};
use ccgroup::completion::CompletionOptions;
use ccgroup::pipeline::Pipeline;

fn main() {
    let p = parse_problem(include_str!("../problems/monoid.txt")).unwrap();
    let run = Pipeline::run(&p, CompletionOptions::default()).unwrap();
    let cs = &run.system;
    let t = parse_term_with(&cs.sig, "f(a,c,1,d)").unwrap();
    let (nf, trace) = cs.normalize_traced(&t);
    for (term, rule) in &trace {
        println!("{:<12} by {rule:?}", cs.sig.render(term));
    }
    println!("{}", cs.sig.render(&nf));
}
