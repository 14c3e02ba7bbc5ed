use super::support::RewardSupport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Step CDF of observed rewards over a finite support, kept as level counts.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf<T> {
    support: RewardSupport<T>,
    counts: Vec<u64>,
    total: u64,
}

impl<T: Scalar> EmpiricalCdf<T> {
    pub fn new(support: RewardSupport<T>) -> Self {
        let counts = vec![0; support.len()];
        Self {
            support,
            counts,
            total: 0,
        }
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn push_level(&mut self, level: usize) {
        self.counts[level] += 1;
        self.total += 1;
    }

    pub fn push(&mut self, y: T) -> Result<()> {
        let level = self
            .support
            .level_of(y)
            .ok_or(Error::UnknownReward(y.as_f64()))?;
        self.push_level(level);
        Ok(())
    }

    fn require_samples(&self) -> Result<T> {
        if self.total == 0 {
            return Err(Error::InsufficientData(
                "empirical CDF has no samples".into(),
            ));
        }
        Ok(T::from_count(self.total))
    }

    /// Fraction of samples `<= y`.
    pub fn evaluate(&self, y: T) -> Result<T> {
        let n = self.require_samples()?;
        let below = self.support.levels_at_or_below(y);
        let hits: u64 = self.counts[..below].iter().sum();
        Ok(T::from_count(hits) / n)
    }

    /// CDF value at each support level.
    pub fn level_values(&self) -> Result<Vec<T>> {
        let n = self.require_samples()?;
        let mut cumulative = 0;
        Ok(self
            .counts
            .iter()
            .map(|&c| {
                cumulative += c;
                T::from_count(cumulative) / n
            })
            .collect())
    }

    pub fn mean(&self) -> Result<T> {
        let n = self.require_samples()?;
        let weighted: T = self
            .counts
            .iter()
            .zip(self.support.values())
            .map(|(&c, &y)| T::from_count(c) * y)
            .sum();
        Ok(weighted / n)
    }
}
