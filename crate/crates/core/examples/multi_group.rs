//! Two group theories over disjoint symbols sharing the same constants.

use ccgroup::cli::run::{run_source, RunFlags};

fn main() {
    let r = run_source(include_str!("../problems/multigroup.txt"), &RunFlags::default()).unwrap();
    print!("{}", r.to_text());
}
