//! Problem files and the command-line pipeline.

pub mod problem;
pub mod run;
