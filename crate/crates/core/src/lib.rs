//! Ground congruence closure modulo semigroups, monoids and groups.
//!
//! Ground equations are flattened into constant, D-flat and A-flat
//! equations, augmented with ground instances of the theory axioms, and
//! completed into a ground rewrite system that is convergent modulo
//! associativity. When completion terminates, two ground terms are equal
//! in the theory exactly when they share a normal form.

pub mod augment;
pub mod cli;
pub mod completion;
pub mod decide;
pub mod error;
pub mod flatten;
pub mod oracle;
pub mod order;
pub mod pipeline;
pub mod term;
pub mod theory;

pub use error::{Error, Result};
