use std::io::Write;

use rand::distributions::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::index::{
    clipped_index, exploration_radius, prune_arms, select_action, ucb1_index, ArmState,
};
use super::regret::cumulative_regret;
use crate::cvar::{cvar_discrete, CvarInterval};
use crate::error::{Error, Result};
use crate::model::{weighted_index, ConfoundedModel};
use crate::scalar::Scalar;

/// Which learner to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    /// CVaR-UCB with causal pruning and index clipping.
    Clipped,
    /// CVaR-UCB without causal information.
    Unclipped,
    /// Mean-based UCB1.
    Ucb1,
}

impl PolicyKind {
    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Clipped => "clipped",
            PolicyKind::Unclipped => "unclipped",
            PolicyKind::Ucb1 => "ucb1",
        }
    }
}

impl std::fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    #[default]
    LowestIndex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BanditConfig<T> {
    pub alpha: T,
    /// `U`, the largest possible reward.
    pub reward_upper: T,
    /// Total pull budget `n`, initialization pulls included.
    pub horizon: u64,
    pub policy: PolicyKind,
    pub tie_rule: TieRule,
}

impl<T: Scalar> BanditConfig<T> {
    pub fn new(alpha: T, reward_upper: T, horizon: u64, policy: PolicyKind) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidAlpha(alpha.as_f64()));
        }
        if !(reward_upper > T::zero()) {
            return Err(Error::InvalidArgument(
                "reward upper bound must be positive".into(),
            ));
        }
        Ok(Self {
            alpha,
            reward_upper,
            horizon,
            policy,
            tie_rule: TieRule::LowestIndex,
        })
    }
}

/// One played step. Initialization pulls carry steps `1 - |K'| ..= 0`, the
/// main loop `1 ..= n - |K'|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep<T> {
    pub step: i64,
    pub arm: usize,
    pub reward: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace<T> {
    pub policy: PolicyKind,
    pub steps: Vec<TraceStep<T>>,
    /// `T_x(n)` for every original arm; pruned arms stay at 0.
    pub pulls: Vec<u64>,
    /// Arms that survived pruning.
    pub kept: Vec<usize>,
    pub true_cvars: Vec<T>,
    pub true_means: Vec<T>,
    pub cum_cvar_regret: Vec<T>,
    pub cum_mean_regret: Vec<T>,
}

impl<T: Scalar> RegretTrace<T> {
    pub fn chosen_arms(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.arm).collect()
    }

    pub fn final_cvar_regret(&self) -> T {
        self.cum_cvar_regret.last().copied().unwrap_or_else(T::zero)
    }

    pub fn final_mean_regret(&self) -> T {
        self.cum_mean_regret.last().copied().unwrap_or_else(T::zero)
    }

    /// Writes `step,arm,reward,cum_cvar_regret,cum_mean_regret`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        w.write_record([
            "step",
            "arm",
            "reward",
            "cum_cvar_regret",
            "cum_mean_regret",
        ])?;
        for (i, s) in self.steps.iter().enumerate() {
            w.write_record([
                s.step.to_string(),
                s.arm.to_string(),
                s.reward.to_string(),
                self.cum_cvar_regret[i].to_string(),
                self.cum_mean_regret[i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs one learner episode against the interventional reward laws of
/// `model`.
///
/// `bounds` holds one CVaR interval per arm and is required for
/// [`PolicyKind::Clipped`]; the other policies ignore it and never prune.
pub fn run_episode<T: Scalar, R: Rng + ?Sized>(
    model: &ConfoundedModel<T>,
    config: &BanditConfig<T>,
    bounds: &[CvarInterval<T>],
    rng: &mut R,
) -> Result<RegretTrace<T>> {
    let num_arms = model.num_arms();
    let support = model.support().clone();
    if config.reward_upper < support.upper_bound() - T::prob_tol() {
        return Err(Error::InvalidArgument(format!(
            "reward upper bound {} is below the support bound {}",
            config.reward_upper,
            support.upper_bound()
        )));
    }
    let laws = (0..num_arms)
        .map(|x| model.interventional_distribution(x))
        .collect::<Result<Vec<_>>>()?;
    let true_cvars = laws
        .iter()
        .map(|d| cvar_discrete(d, config.alpha))
        .collect::<Result<Vec<_>>>()?;
    let true_means: Vec<T> = laws.iter().map(|d| d.mean()).collect();
    let samplers: Vec<_> = laws.iter().map(|d| weighted_index(d.probs())).collect();

    let unbounded = CvarInterval::new(T::neg_infinity(), T::infinity())?;
    let (kept, arm_bounds): (Vec<usize>, Vec<CvarInterval<T>>) = match config.policy {
        PolicyKind::Clipped => {
            if bounds.len() != num_arms {
                return Err(Error::InvalidArgument(format!(
                    "{} CVaR intervals for {num_arms} arms",
                    bounds.len()
                )));
            }
            (prune_arms(bounds)?, bounds.to_vec())
        }
        PolicyKind::Unclipped | PolicyKind::Ucb1 => {
            ((0..num_arms).collect(), vec![unbounded; num_arms])
        }
    };
    if (config.horizon as usize) < kept.len() {
        return Err(Error::InvalidArgument(format!(
            "horizon {} cannot cover {} initialization pulls",
            config.horizon,
            kept.len()
        )));
    }

    let mut arms: Vec<ArmState<T>> = (0..num_arms)
        .map(|x| {
            let mut s = ArmState::new(x, support.clone(), arm_bounds[x]);
            s.pruned = !kept.contains(&x);
            s
        })
        .collect();
    let mut steps = Vec::with_capacity(config.horizon as usize);
    let mut pull = |arm: usize, step: i64, arms: &mut [ArmState<T>], rng: &mut R| {
        let level = samplers[arm].sample(rng);
        arms[arm].cdf.push_level(level);
        steps.push(TraceStep {
            step,
            arm,
            reward: support.value(level),
        });
    };

    let init = kept.len() as i64;
    for (i, &x) in kept.iter().enumerate() {
        pull(x, i as i64 - init + 1, &mut arms, rng);
    }
    let rounds = config.horizon - kept.len() as u64;
    let mut indices = Vec::with_capacity(kept.len());
    for t in 1..=rounds {
        indices.clear();
        for &x in &kept {
            let state = &arms[x];
            let value = match config.policy {
                PolicyKind::Ucb1 => ucb1_index(state, kept.len() as u64 + t - 1)?,
                PolicyKind::Clipped | PolicyKind::Unclipped => {
                    let eps = exploration_radius(config.horizon, state.pulls())?;
                    clipped_index(state, eps, config.alpha)?
                }
            };
            indices.push((x, value));
        }
        let chosen = select_action(&indices)?;
        pull(chosen, t as i64, &mut arms, rng);
    }

    let chosen: Vec<usize> = steps.iter().map(|s| s.arm).collect();
    let cum_cvar_regret = cumulative_regret(&chosen, &true_cvars)?;
    let cum_mean_regret = cumulative_regret(&chosen, &true_means)?;
    Ok(RegretTrace {
        policy: config.policy,
        steps,
        pulls: arms.iter().map(|a| a.pulls()).collect(),
        kept,
        true_cvars,
        true_means,
        cum_cvar_regret,
        cum_mean_regret,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandit::regret::{cvar_regret, regret_decomposition};
    use crate::model::RewardSupport;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Unconfounded two-arm model with `P(Y = 1 | do(x)) = (0.3, 0.7)`.
    fn two_arm() -> ConfoundedModel<f64> {
        ConfoundedModel::new(
            RewardSupport::binary(),
            vec![1.0],
            vec![vec![0.5, 0.5]],
            vec![vec![vec![0.7, 0.3]], vec![vec![0.3, 0.7]]],
        )
        .unwrap()
    }

    fn ci(l: f64, h: f64) -> CvarInterval<f64> {
        CvarInterval::new(l, h).unwrap()
    }

    #[test]
    fn horizon_covering_only_initialization() {
        let m = two_arm();
        let cfg = BanditConfig::new(0.75, 1.0, 2, PolicyKind::Unclipped).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let trace = run_episode(&m, &cfg, &[], &mut rng).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].step, -1);
        assert_eq!(trace.steps[1].step, 0);
        let gap = trace.true_cvars[1] - trace.true_cvars[0];
        assert!((trace.final_cvar_regret() - gap).abs() < 1e-12);
    }

    #[test]
    fn horizon_below_initialization_is_rejected() {
        let cfg = BanditConfig::new(0.75, 1.0, 1, PolicyKind::Ucb1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(run_episode(&two_arm(), &cfg, &[], &mut rng).is_err());
    }

    #[test]
    fn forced_optimal_play_has_zero_regret() {
        let m = two_arm();
        let cfg = BanditConfig::new(0.75, 1.0, 300, PolicyKind::Clipped).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // arm 0 pruned: h_0 = 0.1 < l_1 = 0.5
        let trace = run_episode(&m, &cfg, &[ci(0.0, 0.1), ci(0.5, 0.7)], &mut rng).unwrap();
        assert_eq!(trace.pulls, vec![0, 300]);
        assert_eq!(trace.kept, vec![1]);
        assert!(trace.cum_cvar_regret.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn clipped_policy_needs_one_interval_per_arm() {
        let cfg = BanditConfig::new(0.75, 1.0, 10, PolicyKind::Clipped).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(run_episode(&two_arm(), &cfg, &[ci(0.0, 1.0)], &mut rng).is_err());
    }

    #[test]
    fn trace_accounting() {
        let m = two_arm();
        for policy in [PolicyKind::Clipped, PolicyKind::Unclipped, PolicyKind::Ucb1] {
            let cfg = BanditConfig::new(0.75, 1.0, 500, policy).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let trace = run_episode(&m, &cfg, &[ci(0.0, 0.5), ci(0.3, 0.8)], &mut rng).unwrap();
            assert_eq!(trace.pulls.iter().sum::<u64>(), 500);
            assert_eq!(trace.steps.len(), 500);
            let again = cvar_regret(&trace, &trace.true_cvars).unwrap();
            assert_eq!(again, trace.cum_cvar_regret);
            let decomposed = regret_decomposition(&trace.pulls, &trace.true_cvars).unwrap();
            assert!((trace.final_cvar_regret() - decomposed).abs() <= 1e-12);
            assert!(cvar_regret(&trace, &trace.true_cvars[..1]).is_err());
        }
    }

    #[test]
    fn same_seed_same_trace() {
        let m = two_arm();
        let cfg = BanditConfig::new(0.75, 1.0, 200, PolicyKind::Unclipped).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            run_episode(&m, &cfg, &[], &mut rng).unwrap().chosen_arms()
        };
        assert_eq!(run(4), run(4));
    }

    #[test]
    fn trace_csv_header_and_rows() {
        let m = two_arm();
        let cfg = BanditConfig::new(0.75, 1.0, 3, PolicyKind::Ucb1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trace = run_episode(&m, &cfg, &[], &mut rng).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "step,arm,reward,cum_cvar_regret,cum_mean_regret");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("-1,0,"));
        assert!(lines[3].starts_with("1,"));
    }
}
