//! Shows the equations added for the inverse and unit laws.

use ccgroup::augment::phase2;
use ccgroup::cli::problem::parse_problem;
use ccgroup::flatten::phase1;

fn main() {
    let p = parse_problem(include_str!("../problems/running.txt")).unwrap();
    let ord = p.ordering().unwrap();
    let mut sig = p.sig.clone();
    let p1 = phase1(&p.equations, &mut sig, &p.theory).unwrap();
    let aug = phase2(&p1.equations, &mut sig, &ord, &p.theory).unwrap();

    for (i, c, d) in &aug.inverse_names {
        println!("named {}({}) as {}", sig.name(*i), sig.name(*c), sig.name(*d));
    }
    println!("inverse table ({}):", aug.inverse_table.len());
    for e in &aug.inverse_table {
        println!("  {}", e.render(&sig));
    }
    println!("unit table ({}):", aug.unit_table.len());
    for e in &aug.unit_table {
        println!("  {}", e.render(&sig));
    }
    let names: Vec<&str> = aug.constants.iter().map(|c| sig.name(*c)).collect();
    println!("constants: {}", names.join(" "));
}
