use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{brute_force_do_bounds, do_probability_interval, SolverOptions};
use crate::cvar::{cvar_interval_general, grid_cvar_bounds, CvarInterval, OutcomeIntervalSet};
use crate::error::{Error, Result};
use crate::model::{ConfoundedModel, JointActionRewardTable, RewardSupport};
use crate::Sense;

/// Largest solver-vs-oracle deviation tolerated by [`OracleReport::passed`].
pub const ORACLE_TOLERANCE: f64 = 1e-3;

/// Step of the CVaR simplex grid. Vertices lie on the grid at any step.
const CVAR_GRID_STEP: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCheck {
    pub arm: usize,
    pub level: usize,
    pub solver: [f64; 2],
    pub oracle: [f64; 2],
    pub certified_gap: [Option<f64>; 2],
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvarCheck {
    pub arm: usize,
    pub solver: CvarInterval<f64>,
    pub oracle: [f64; 2],
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub resolution: f64,
    pub tolerance: f64,
    pub levels: Vec<LevelCheck>,
    pub cvar: Vec<CvarCheck>,
    pub max_probability_gap: f64,
    pub max_cvar_gap: f64,
    pub passed: bool,
}

impl OracleReport {
    pub fn max_gap(&self) -> f64 {
        self.max_probability_gap.max(self.max_cvar_gap)
    }

    /// Merges several reports into one, keeping every check.
    pub fn combine(reports: Vec<OracleReport>) -> Option<OracleReport> {
        let mut it = reports.into_iter();
        let mut acc = it.next()?;
        for r in it {
            acc.levels.extend(r.levels);
            acc.cvar.extend(r.cvar);
            acc.max_probability_gap = acc.max_probability_gap.max(r.max_probability_gap);
            acc.max_cvar_gap = acc.max_cvar_gap.max(r.max_cvar_gap);
            acc.passed &= r.passed;
        }
        Some(acc)
    }
}

/// Compares the bound solver against the exhaustive `b`-grid at
/// `resolution`, and the CVaR bounds against the simplex grid, for every
/// arm of `joint`.
pub fn oracle_check(
    joint: &JointActionRewardTable<f64>,
    context_marginal: &[f64],
    alpha: f64,
    resolution: f64,
) -> Result<OracleReport> {
    if context_marginal.len() > 4 {
        return Err(Error::InvalidArgument(format!(
            "the grid oracle handles at most 4 contexts, got {}",
            context_marginal.len()
        )));
    }
    let options = SolverOptions::default();
    let support = joint.support();
    let mut levels = Vec::new();
    let mut cvar = Vec::new();
    for x in 0..joint.num_arms() {
        let mut intervals = Vec::with_capacity(support.len());
        for level in 0..support.len() {
            let solved = do_probability_interval(joint, context_marginal, x, level, &options)?;
            let lo =
                brute_force_do_bounds(joint, context_marginal, x, level, Sense::Min, resolution)?;
            let hi =
                brute_force_do_bounds(joint, context_marginal, x, level, Sense::Max, resolution)?;
            let gap = (solved.interval.lower - lo.value)
                .abs()
                .max((solved.interval.upper - hi.value).abs());
            levels.push(LevelCheck {
                arm: x,
                level,
                solver: [solved.interval.lower, solved.interval.upper],
                oracle: [lo.value, hi.value],
                certified_gap: [lo.certified_gap, hi.certified_gap],
                gap,
            });
            intervals.push(solved.interval);
        }
        let set = OutcomeIntervalSet::new(support.clone(), intervals)?;
        let solver = cvar_interval_general(&set, alpha)?;
        let oracle = [
            grid_cvar_bounds(&set, alpha, Sense::Min, CVAR_GRID_STEP)?,
            grid_cvar_bounds(&set, alpha, Sense::Max, CVAR_GRID_STEP)?,
        ];
        let gap = (solver.lower - oracle[0])
            .abs()
            .max((solver.upper - oracle[1]).abs());
        cvar.push(CvarCheck {
            arm: x,
            solver,
            oracle,
            gap,
        });
    }
    let max_probability_gap = levels.iter().map(|l| l.gap).fold(0.0, f64::max);
    let max_cvar_gap = cvar.iter().map(|c| c.gap).fold(0.0, f64::max);
    Ok(OracleReport {
        resolution,
        tolerance: ORACLE_TOLERANCE,
        passed: max_probability_gap <= ORACLE_TOLERANCE && max_cvar_gap <= ORACLE_TOLERANCE,
        levels,
        cvar,
        max_probability_gap,
        max_cvar_gap,
    })
}

fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let u = Uniform::new(1e-3, 1.0);
    let w: Vec<f64> = (0..n).map(|_| -f64::ln(u.sample(rng))).collect();
    let total: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|v| v / total).collect();
    let head: f64 = p[..n - 1].iter().sum();
    p[n - 1] = 1.0 - head;
    p
}

/// Random confounded model with the given shape: flat-Dirichlet context
/// marginal, policy rows and reward laws, evenly spaced rewards on `[0, 1]`.
pub fn random_model<R: Rng + ?Sized>(
    rng: &mut R,
    contexts: usize,
    arms: usize,
    levels: usize,
) -> Result<ConfoundedModel<f64>> {
    if contexts == 0 || arms == 0 || levels < 2 {
        return Err(Error::InvalidArgument(
            "random model needs a context, an arm and two reward levels".into(),
        ));
    }
    let support = RewardSupport::new(
        (0..levels)
            .map(|i| i as f64 / (levels - 1) as f64)
            .collect(),
        1.0,
    )?;
    let marginal = random_simplex(rng, contexts);
    let policy = (0..contexts).map(|_| random_simplex(rng, arms)).collect();
    let laws = (0..arms)
        .map(|_| (0..contexts).map(|_| random_simplex(rng, levels)).collect())
        .collect();
    ConfoundedModel::new(support, marginal, policy, laws)
}

/// [`oracle_check`] on `count` random binary-reward models with one to
/// three contexts.
pub fn random_oracle_check(
    count: usize,
    seed: u64,
    alpha: f64,
    resolution: f64,
) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reports = (0..count)
        .map(|_| {
            let contexts = rng.gen_range(1..=3);
            let model = random_model(&mut rng, contexts, 2, 2)?;
            oracle_check(
                &model.exact_joint_table(),
                model.context_marginal(),
                alpha,
                resolution,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    OracleReport::combine(reports)
        .ok_or_else(|| Error::InvalidArgument("no random instances requested".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ExperimentConfig;

    #[test]
    fn reference_model_passes() {
        let m = ExperimentConfig::emotion_regulation()
            .model
            .build()
            .unwrap();
        let r = oracle_check(&m.exact_joint_table(), m.context_marginal(), 0.75, 1e-3).unwrap();
        assert!(r.passed, "max gap {}", r.max_gap());
        assert_eq!(r.levels.len(), 4);
    }

    #[test]
    fn single_context_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_model(&mut rng, 1, 2, 3).unwrap();
        let r = oracle_check(&m.exact_joint_table(), m.context_marginal(), 0.5, 1e-3).unwrap();
        assert!(r.max_gap() <= 1e-9, "max gap {}", r.max_gap());
    }

    #[test]
    fn too_many_contexts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_model(&mut rng, 5, 2, 2).unwrap();
        assert!(oracle_check(&m.exact_joint_table(), m.context_marginal(), 0.5, 1e-2).is_err());
    }
}
