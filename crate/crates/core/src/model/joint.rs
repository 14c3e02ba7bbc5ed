use super::support::RewardSupport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Observational joint `P(x, y)` over arms and reward levels.
#[derive(Debug, Clone, PartialEq)]
pub struct JointActionRewardTable<T> {
    support: RewardSupport<T>,
    /// `entries[x][level]`
    entries: Vec<Vec<T>>,
    marginals: Vec<T>,
}

impl<T: Scalar> JointActionRewardTable<T> {
    pub fn new(support: RewardSupport<T>, entries: Vec<Vec<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbabilities(
                "joint table has no arms".into(),
            ));
        }
        let tol = T::prob_tol();
        for (x, row) in entries.iter().enumerate() {
            if row.len() != support.len() {
                return Err(Error::InvalidProbabilities(format!(
                    "joint row for arm {x} has {} levels, expected {}",
                    row.len(),
                    support.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < -tol) {
                return Err(Error::InvalidProbabilities(format!(
                    "joint entry {p} for arm {x} is negative"
                )));
            }
        }
        let marginals: Vec<T> = entries
            .iter()
            .map(|row| row.iter().copied().sum())
            .collect();
        let total: T = marginals.iter().copied().sum();
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidProbabilities(format!(
                "joint mass is {total}, expected 1"
            )));
        }
        Ok(Self {
            support,
            entries,
            marginals,
        })
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    pub fn num_arms(&self) -> usize {
        self.entries.len()
    }

    /// `P(x, y_level)`
    pub fn prob(&self, arm: usize, level: usize) -> T {
        self.entries[arm][level]
    }

    /// `P(x)`
    pub fn arm_marginal(&self, arm: usize) -> T {
        self.marginals[arm]
    }

    /// `P(x, y')`: mass of arm `x` on every level other than `level`.
    pub fn complement(&self, arm: usize, level: usize) -> T {
        self.entries[arm]
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != level)
            .map(|(_, &p)| p)
            .sum()
    }

    pub(crate) fn check_cell(&self, arm: usize, level: usize) -> Result<()> {
        if arm >= self.num_arms() {
            return Err(Error::ArmOutOfRange {
                arm,
                num_arms: self.num_arms(),
            });
        }
        if level >= self.support.len() {
            return Err(Error::InvalidArgument(format!(
                "reward level {level} out of range"
            )));
        }
        Ok(())
    }
}
