//! Decides word problems and shows the rewrite chains to normal form.

use ccgroup::cli::problem::{parse_problem, parse_term_with};
use ccgroup::completion::CompletionOptions;
use ccgroup::pipeline::Pipeline;

fn main() {
    let p = parse_problem(include_str!("../problems/running.txt")).unwrap();
    let run = Pipeline::run(&p, CompletionOptions::default()).unwrap();
    let cs = &run.system;
    for (s, t) in [
        "i(i(f(h(a),f(i(b),a)))) = 1",
        "h(a) = b",
        "f(h(h(a)),a) = h(b)",
        "i(h(b)) = f(b,b)",
    ]
    .iter()
    .map(|q| q.split_once(" = ").unwrap())
    {
        let (s, t) = (
            parse_term_with(&cs.sig, s).unwrap(),
            parse_term_with(&cs.sig, t).unwrap(),
        );
        let verdict = cs.decide_eq(&s, &t).unwrap();
        println!("{} = {}: {verdict}", cs.sig.render(&s), cs.sig.render(&t));
        for x in [&s, &t] {
            let (nf, trace) = cs.normalize_traced(x);
            println!("  {}", cs.render_trace(&trace, &nf).join(" -> "));
        }
    }
}
