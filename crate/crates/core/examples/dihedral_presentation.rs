//! Reads a monoid presentation off the completed problem and counts the
//! irreducible words, which here gives the order of the group.

use ccgroup::cli::run::{run_source, RunFlags};

fn main() {
    let flags = RunFlags {
        show_presentation: true,
        enumerate_nf: Some(6),
        ..Default::default()
    };
    let r = run_source(include_str!("../problems/dihedral.txt"), &flags).unwrap();
    let pres = r.presentation.unwrap();
    println!("generators: {}", pres.generators.join(", "));
    for rel in &pres.relations {
        println!("  {rel}");
    }
    let nf = r.normal_forms.unwrap();
    println!(
        "{} irreducible words up to length {}: {}",
        nf.count,
        nf.max_len,
        nf.words.join(", ")
    );
}
