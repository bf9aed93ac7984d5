//! Completes the small group problem and prints every inference.

use ccgroup::cli::problem::parse_problem;
use ccgroup::completion::CompletionOptions;
use ccgroup::pipeline::Pipeline;

fn main() {
    let p = parse_problem(include_str!("../problems/intro.txt")).unwrap();
    let run = Pipeline::run(&p, CompletionOptions::default()).unwrap();
    let sig = &run.system.sig;
    for e in &run.completion.trace {
        println!("{}", e.render(sig));
    }
    println!(
        "-- {} after {} inferences",
        run.completion.status.as_str(),
        run.completion.steps_used
    );
    for (k, n) in &run.completion.stats {
        println!("{k:>9}: {n}");
    }
    for r in &run.completion.rules {
        println!("{}", r.render(sig));
    }
}
