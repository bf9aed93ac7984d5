//! An associative symbol with no unit or inverse.

use ccgroup::cli::run::{run_source, RunFlags};

fn main() {
    let report = run_source(include_str!("../problems/semigroup.txt"), &RunFlags::default()).unwrap();
    print!("{}", report.to_text());
}
