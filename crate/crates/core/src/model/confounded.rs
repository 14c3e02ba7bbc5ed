use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::distribution::{check_probability_vector, DiscreteDistribution};
use super::joint::JointActionRewardTable;
use super::support::RewardSupport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One draw from the expert's generative process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpertSample {
    pub context: usize,
    pub action: usize,
    /// Index into the reward support.
    pub level: usize,
}

pub(crate) fn weighted_index<T: Scalar>(probs: &[T]) -> WeightedIndex<f64> {
    WeightedIndex::new(probs.iter().map(|p| p.as_f64().max(0.0)))
        .expect("validated probability vector has positive mass")
}

/// Ground-truth contextual model: context marginal `P(c)`, expert policy
/// `P(x | c)` and reward law `P(Y | x, c)`.
#[derive(Debug, Clone)]
pub struct ConfoundedModel<T> {
    num_arms: usize,
    context_marginal: Vec<T>,
    /// `policy[c][x] = P(x | c)`
    policy: Vec<Vec<T>>,
    /// `reward_law[x][c] = P(Y | x, c)`
    reward_law: Vec<Vec<DiscreteDistribution<T>>>,
    support: RewardSupport<T>,
    context_sampler: WeightedIndex<f64>,
    policy_samplers: Vec<WeightedIndex<f64>>,
    reward_samplers: Vec<Vec<WeightedIndex<f64>>>,
}

impl<T: Scalar> ConfoundedModel<T> {
    /// `policy` is indexed `[context][arm]`, `reward_probs` is indexed
    /// `[arm][context][level]`.
    pub fn new(
        support: RewardSupport<T>,
        context_marginal: Vec<T>,
        policy: Vec<Vec<T>>,
        reward_probs: Vec<Vec<Vec<T>>>,
    ) -> Result<Self> {
        let num_contexts = context_marginal.len();
        if num_contexts == 0 {
            return Err(Error::InvalidModel("no contexts".into()));
        }
        check_probability_vector(&context_marginal, "context marginal")?;
        if policy.len() != num_contexts {
            return Err(Error::InvalidModel(format!(
                "policy has {} context rows, expected {num_contexts}",
                policy.len()
            )));
        }
        let num_arms = policy[0].len();
        if num_arms == 0 {
            return Err(Error::InvalidModel("no arms".into()));
        }
        for (c, row) in policy.iter().enumerate() {
            if row.len() != num_arms {
                return Err(Error::InvalidModel(format!(
                    "policy row for context {c} has {} arms, expected {num_arms}",
                    row.len()
                )));
            }
            check_probability_vector(row, &format!("policy P(x | c={c})"))?;
        }
        if reward_probs.len() != num_arms {
            return Err(Error::InvalidModel(format!(
                "reward law has {} arm rows, expected {num_arms}",
                reward_probs.len()
            )));
        }
        let mut reward_law = Vec::with_capacity(num_arms);
        for (x, per_context) in reward_probs.into_iter().enumerate() {
            if per_context.len() != num_contexts {
                return Err(Error::InvalidModel(format!(
                    "reward law for arm {x} has {} contexts, expected {num_contexts}",
                    per_context.len()
                )));
            }
            let dists = per_context
                .into_iter()
                .map(|probs| DiscreteDistribution::new(support.clone(), probs))
                .collect::<Result<Vec<_>>>()?;
            reward_law.push(dists);
        }

        let context_sampler = weighted_index(&context_marginal);
        let policy_samplers = policy.iter().map(|row| weighted_index(row)).collect();
        let reward_samplers = reward_law
            .iter()
            .map(|per_c| per_c.iter().map(|d| weighted_index(d.probs())).collect())
            .collect();
        Ok(Self {
            num_arms,
            context_marginal,
            policy,
            reward_law,
            support,
            context_sampler,
            policy_samplers,
            reward_samplers,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn num_contexts(&self) -> usize {
        self.context_marginal.len()
    }

    pub fn context_marginal(&self) -> &[T] {
        &self.context_marginal
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    /// `P(x | c)`
    pub fn policy_prob(&self, context: usize, arm: usize) -> T {
        self.policy[context][arm]
    }

    /// `P(Y | x, c)`
    pub fn reward_law(&self, arm: usize, context: usize) -> &DiscreteDistribution<T> {
        &self.reward_law[arm][context]
    }

    fn check_arm(&self, arm: usize) -> Result<()> {
        if arm >= self.num_arms {
            return Err(Error::ArmOutOfRange {
                arm,
                num_arms: self.num_arms,
            });
        }
        Ok(())
    }

    /// Draws `(context, action, reward)` from the expert's process.
    pub fn sample_expert_step<R: Rng + ?Sized>(&self, rng: &mut R) -> ExpertSample {
        let context = self.context_sampler.sample(rng);
        let action = self.policy_samplers[context].sample(rng);
        let level = self.reward_samplers[action][context].sample(rng);
        ExpertSample {
            context,
            action,
            level,
        }
    }

    /// Back-door adjusted reward law `P(y | do(x)) = sum_c P(y | x, c) P(c)`.
    pub fn interventional_distribution(&self, arm: usize) -> Result<DiscreteDistribution<T>> {
        self.check_arm(arm)?;
        let probs = (0..self.support.len())
            .map(|level| {
                self.context_marginal
                    .iter()
                    .enumerate()
                    .map(|(c, &pc)| self.reward_law[arm][c].prob(level) * pc)
                    .sum()
            })
            .collect();
        DiscreteDistribution::new(self.support.clone(), probs)
    }

    /// Noise-free observational joint `P(x, y) = sum_c P(c) P(x | c) P(y | x, c)`.
    pub fn exact_joint_table(&self) -> JointActionRewardTable<T> {
        let entries = (0..self.num_arms)
            .map(|x| {
                (0..self.support.len())
                    .map(|level| {
                        self.context_marginal
                            .iter()
                            .enumerate()
                            .map(|(c, &pc)| {
                                pc * self.policy[c][x] * self.reward_law[x][c].prob(level)
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        JointActionRewardTable::new(self.support.clone(), entries)
            .expect("joint of a validated model is a valid table")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Two contexts (`c = 0` stationary, `c = 1` moving), two arms.
    fn emotion_model() -> ConfoundedModel<f64> {
        ConfoundedModel::new(
            RewardSupport::binary(),
            vec![0.88, 0.12],
            vec![vec![0.3, 0.7], vec![0.8, 0.2]],
            vec![
                vec![vec![0.55, 0.45], vec![0.7, 0.3]],
                vec![vec![0.45, 0.55], vec![0.9, 0.1]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn interventional_probabilities() {
        let m = emotion_model();
        let d1 = m.interventional_distribution(1).unwrap();
        let d0 = m.interventional_distribution(0).unwrap();
        assert!((d1.prob(1) - 0.496).abs() < 1e-12);
        assert!((d0.prob(1) - 0.432).abs() < 1e-12);
        assert!(m.interventional_distribution(2).is_err());
    }

    #[test]
    fn exact_joint_entries() {
        let j = emotion_model().exact_joint_table();
        assert!((j.prob(1, 1) - 0.3412).abs() < 1e-12);
        assert!((j.prob(1, 0) - 0.2988).abs() < 1e-12);
        assert!((j.prob(0, 1) - 0.1476).abs() < 1e-12);
        assert!((j.prob(0, 0) - 0.2124).abs() < 1e-12);
        let total: f64 = (0..2).map(|x| j.arm_marginal(x)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_context_has_no_confounding() {
        let m = ConfoundedModel::<f64>::new(
            RewardSupport::binary(),
            vec![1.0],
            vec![vec![0.4, 0.6]],
            vec![vec![vec![0.7, 0.3]], vec![vec![0.2, 0.8]]],
        )
        .unwrap();
        let d = m.interventional_distribution(1).unwrap();
        assert_eq!(d.probs(), m.reward_law(1, 0).probs());
        let j = m.exact_joint_table();
        assert!((j.prob(1, 1) - 0.6 * 0.8).abs() < 1e-15);
        assert!((j.prob(0, 0) - 0.4 * 0.7).abs() < 1e-15);
    }

    #[test]
    fn degenerate_model_samples_are_fixed() {
        let m = ConfoundedModel::new(
            RewardSupport::binary(),
            vec![1.0],
            vec![vec![0.0, 1.0]],
            vec![vec![vec![1.0, 0.0]], vec![vec![0.0, 1.0]]],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let s = m.sample_expert_step(&mut rng);
            assert_eq!((s.context, s.action, s.level), (0, 1, 1));
        }
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let m = emotion_model();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..200)
                .map(|_| m.sample_expert_step(&mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_ne!(draw(11), draw(12));
    }

    #[test]
    fn action_frequency_matches_policy_marginal() {
        let m = emotion_model();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 1_000_000;
        let hits = (0..n)
            .filter(|_| m.sample_expert_step(&mut rng).action == 1)
            .count();
        let p = 0.2 * 0.12 + 0.7 * 0.88;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((hits as f64 / n as f64 - p).abs() < 3.0 * sigma);
    }

    #[test]
    fn rejects_inconsistent_tables() {
        let bad_policy = ConfoundedModel::<f64>::new(
            RewardSupport::binary(),
            vec![0.5, 0.5],
            vec![vec![0.3, 0.6], vec![0.5, 0.5]],
            vec![vec![vec![0.5, 0.5]; 2]; 2],
        );
        assert!(bad_policy.is_err());
        let bad_marginal = ConfoundedModel::<f64>::new(
            RewardSupport::binary(),
            vec![0.5, 0.6],
            vec![vec![0.5, 0.5]; 2],
            vec![vec![vec![0.5, 0.5]; 2]; 2],
        );
        assert!(bad_marginal.is_err());
    }
}
