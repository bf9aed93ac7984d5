//! Compares the completion-based decision with brute-force bounded
//! congruence closure on every pair of small terms.

use ccgroup::cli::problem::parse_problem;
use ccgroup::completion::CompletionOptions;
use ccgroup::oracle::oracle_closure;
use ccgroup::pipeline::Pipeline;

fn main() {
    let p = parse_problem(include_str!("../problems/intro.txt")).unwrap();
    let run = Pipeline::run(&p, CompletionOptions::default()).unwrap();
    let u = oracle_closure(&p.equations, &p.sig, &p.theory.sigs, 5).unwrap();
    let ids = u.ids_up_to(5);
    let nfs: Vec<_> = ids.iter().map(|&i| run.system.normalize(&u.term(i))).collect();
    let (mut agree, mut only_pipeline) = (0usize, 0usize);
    for x in 0..ids.len() {
        for y in x + 1..ids.len() {
            match (u.same_class(ids[x], ids[y]), nfs[x] == nfs[y]) {
                (true, false) => panic!(
                    "oracle equates {} and {}",
                    p.sig.render(&u.term(ids[x])),
                    p.sig.render(&u.term(ids[y]))
                ),
                (false, true) => only_pipeline += 1,
                _ => agree += 1,
            }
        }
    }
    println!(
        "{} terms, {agree} pairs agree, {only_pipeline} equal only beyond the bound",
        ids.len()
    );
}
