//! Partial-identification bounds on `P(y | do(x))`.

mod interval;
mod program;
mod tian_pearl;

pub use interval::ProbabilityInterval;
pub use program::{
    Allocation, FractionalProgram, OracleSolution, ProgramSolution, SolverDiagnostics,
    SolverOptions,
};
pub use tian_pearl::tian_pearl_bounds;

use crate::error::Result;
use crate::model::JointActionRewardTable;
use crate::scalar::Scalar;
use crate::Sense;

/// Optimal value of the bound program for one `(arm, level)` and sense,
/// together with the achieving `(a, b)`.
pub fn do_probability_bounds<T: Scalar>(
    joint: &JointActionRewardTable<T>,
    context_marginal: &[T],
    arm: usize,
    level: usize,
    sense: Sense,
) -> Result<ProgramSolution<T>> {
    FractionalProgram::new(joint, context_marginal, arm, level)?
        .solve(sense, &SolverOptions::default())
}

/// Both senses of [`do_probability_bounds`].
#[derive(Debug, Clone, PartialEq)]
pub struct DoBounds<T> {
    pub interval: ProbabilityInterval<T>,
    pub lower: ProgramSolution<T>,
    pub upper: ProgramSolution<T>,
}

pub fn do_probability_interval<T: Scalar>(
    joint: &JointActionRewardTable<T>,
    context_marginal: &[T],
    arm: usize,
    level: usize,
    options: &SolverOptions,
) -> Result<DoBounds<T>> {
    let program = FractionalProgram::new(joint, context_marginal, arm, level)?;
    let lower = program.solve(Sense::Min, options)?;
    let upper = program.solve(Sense::Max, options)?;
    Ok(DoBounds {
        interval: ProbabilityInterval::new(lower.value, upper.value)?,
        lower,
        upper,
    })
}

/// Exhaustive-grid referee for [`do_probability_bounds`]; at most four
/// contexts.
pub fn brute_force_do_bounds<T: Scalar>(
    joint: &JointActionRewardTable<T>,
    context_marginal: &[T],
    arm: usize,
    level: usize,
    sense: Sense,
    resolution: T,
) -> Result<OracleSolution<T>> {
    FractionalProgram::new(joint, context_marginal, arm, level)?.brute_force(sense, resolution)
}
