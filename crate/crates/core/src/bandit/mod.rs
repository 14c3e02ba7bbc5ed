//! Risk-averse bandit learners: CVaR-UCB with DKW optimism, optionally
//! pruned and clipped by causal CVaR bounds, and the UCB1 mean baseline.

mod episode;
mod index;
mod regret;

pub use episode::{run_episode, BanditConfig, PolicyKind, RegretTrace, TieRule, TraceStep};
pub use index::{
    clipped_index, exploration_radius, optimistic_cdf, prune_arms, select_action, ucb1_index,
    ArmState,
};
pub use regret::{cumulative_regret, cvar_regret, gaps, regret_decomposition};
