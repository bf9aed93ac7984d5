//! Flattens a group problem and names its nested subterms.

use ccgroup::cli::problem::parse_problem;
use ccgroup::flatten::phase1;

const SRC: &str = "theory group f i 1
fun h 1
const a b
eq f(a,a) = f(h(a),f(i(h(a)),1))
eq f(a,h(a)) = b
eq f(i(a),b) = b
";

fn main() {
    let p = parse_problem(SRC).expect("valid problem");
    let mut sig = p.sig.clone();
    let out = phase1(&p.equations, &mut sig, &p.theory).expect("phase one");
    println!("flat equations:");
    for e in &out.equations {
        println!("  {}", e.render(&sig));
    }
    println!("names:");
    for (t, c) in out.registry.entries() {
        println!("  {} := {}", sig.name(*c), t.render(&sig));
    }
}
