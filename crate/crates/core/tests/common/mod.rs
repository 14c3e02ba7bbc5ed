#![allow(dead_code)]

use causal_cvar::bounds::{do_probability_interval, ProbabilityInterval, SolverOptions};
use causal_cvar::cvar::{cvar_bounds_binary, CvarInterval};
use causal_cvar::harness::{random_model, ExperimentConfig};
use causal_cvar::model::{ConfoundedModel, RewardSupport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn table_one() -> ConfoundedModel<f64> {
    ExperimentConfig::emotion_regulation()
        .model
        .build()
        .unwrap()
}

/// Unconfounded binary-reward arms with the given success probabilities.
pub fn bernoulli_arms(p_one: &[f64]) -> ConfoundedModel<f64> {
    let k = p_one.len();
    ConfoundedModel::new(
        RewardSupport::binary(),
        vec![1.0],
        vec![vec![1.0 / k as f64; k]],
        p_one.iter().map(|&p| vec![vec![1.0 - p, p]]).collect(),
    )
    .unwrap()
}

/// `count` random binary-reward models with `1..=max_contexts` contexts and
/// two or three arms.
pub fn random_binary_models(
    count: usize,
    max_contexts: usize,
    seed: u64,
) -> Vec<ConfoundedModel<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = rng.gen_range(1..=max_contexts);
            let k = rng.gen_range(2..=3);
            random_model(&mut rng, c, k, 2).unwrap()
        })
        .collect()
}

pub struct ArmCheck {
    pub causal: ProbabilityInterval<f64>,
    pub cvar: CvarInterval<f64>,
}

/// Bounds on `P(Y = 1 | do(x))` and the implied CVaR interval for every arm,
/// from the exact joint.
pub fn exact_binary_bounds(model: &ConfoundedModel<f64>, alpha: f64) -> Vec<ArmCheck> {
    let joint = model.exact_joint_table();
    (0..model.num_arms())
        .map(|x| {
            let b = do_probability_interval(
                &joint,
                model.context_marginal(),
                x,
                1,
                &SolverOptions::default(),
            )
            .unwrap();
            ArmCheck {
                causal: b.interval,
                cvar: cvar_bounds_binary(b.interval, alpha).unwrap(),
            }
        })
        .collect()
}
