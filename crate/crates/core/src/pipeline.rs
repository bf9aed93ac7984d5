//! Runs the three phases on a parsed problem.

use crate::augment::{phase2, AugmentedProblem};
use crate::cli::problem::Problem;
use crate::completion::{complete, CompletionOptions, CompletionResult};
use crate::decide::CompletedSystem;
use crate::error::Result;
use crate::flatten::{phase1, Phase1};

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub problem: Problem,
    pub phase1: Phase1,
    pub augmented: AugmentedProblem,
    pub completion: CompletionResult,
    pub system: CompletedSystem,
}

impl Pipeline {
    /// Flattens, augments and completes. Problem options override `opts`
    /// where they are set.
    pub fn run(problem: &Problem, mut opts: CompletionOptions) -> Result<Pipeline> {
        if let Some(f) = problem.options.fuel {
            opts.fuel = f;
        }
        opts.skip_unit_deduce |= problem.options.skip_unit_deduce;
        let mut sig = problem.sig.clone();
        let ord = problem.ordering()?;
        let cfg = &problem.theory;
        let p1 = phase1(&problem.equation_terms(), &mut sig, cfg)?;
        let aug = phase2(&p1.equations, &mut sig, &ord, cfg)?;
        let res = complete(&aug, &sig, &ord, cfg, opts)?;
        let system = CompletedSystem::new(sig, cfg.clone(), ord, &res, p1.registry.clone());
        Ok(Pipeline {
            problem: problem.clone(),
            phase1: p1,
            augmented: aug,
            completion: res,
            system,
        })
    }

    /// Decides every query of the problem in order.
    pub fn decide_queries(&self) -> Result<Vec<bool>> {
        self.problem
            .queries
            .iter()
            .map(|(s, t)| self.system.decide_eq(s, t))
            .collect()
    }
}
