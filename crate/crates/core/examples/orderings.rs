//! The term ordering used to orient equations and the complexity triple.

use ccgroup::cli::problem::{parse_problem, parse_term_with};
use ccgroup::order::measure;

fn main() {
    let p = parse_problem("theory group f i 1\nfun h 1\nconst a b c\nprecedence a b c\n").unwrap();
    let ord = p.ordering().unwrap();
    let t = |s| parse_term_with(&p.sig, s).unwrap();
    for (s, u) in [("f(a,b)", "f(b,a)"), ("h(a)", "b"), ("f(a,b,c)", "f(c,c)"), ("c", "b")] {
        println!("{s} vs {u}: {:?}", ord.term_compare(&p.sig, &t(s), &t(u)));
    }
    let x = t("i(h(i(f(a,b,c))))");
    println!(
        "measure of {}: {:?}",
        p.sig.render(&x),
        measure(&x, &p.sig, &ord, &p.theory.sigs)
    );
}
