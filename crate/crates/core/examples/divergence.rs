//! A finite semigroup presentation whose completion is infinite. The run
//! stops when the fuel is spent and the queries stay undecided.

use ccgroup::cli::run::{run_source, RunFlags};

fn main() {
    for fuel in [100, 1000, 5000] {
        let flags = RunFlags {
            fuel: Some(fuel),
            ..Default::default()
        };
        let r = run_source(include_str!("../problems/divergent.txt"), &flags).unwrap();
        let longest = r.rules.iter().max_by_key(|s| s.len()).unwrap();
        println!(
            "fuel {fuel}: {} with {} rules, longest {longest}",
            r.status,
            r.rules.len()
        );
    }
}
