use super::support::RewardSupport;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Validates a probability vector: entries in `[0, 1]`, total mass 1.
pub(crate) fn check_probability_vector<T: Scalar>(probs: &[T], what: &str) -> Result<()> {
    let tol = T::prob_tol();
    for &p in probs {
        if !p.is_finite() || p < -tol || p > T::one() + tol {
            return Err(Error::InvalidProbabilities(format!(
                "{what}: entry {p} outside [0, 1]"
            )));
        }
    }
    let total: T = probs.iter().copied().sum();
    if (total - T::one()).abs() > tol {
        return Err(Error::InvalidProbabilities(format!(
            "{what}: entries sum to {total}, expected 1"
        )));
    }
    Ok(())
}

/// Probability mass function over a [`RewardSupport`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<T> {
    support: RewardSupport<T>,
    probs: Vec<T>,
}

impl<T: Scalar> DiscreteDistribution<T> {
    pub fn new(support: RewardSupport<T>, probs: Vec<T>) -> Result<Self> {
        if probs.len() != support.len() {
            return Err(Error::InvalidProbabilities(format!(
                "{} probabilities for {} support levels",
                probs.len(),
                support.len()
            )));
        }
        check_probability_vector(&probs, "distribution")?;
        Ok(Self { support, probs })
    }

    /// Point mass on `level`.
    pub fn point_mass(support: RewardSupport<T>, level: usize) -> Result<Self> {
        let mut probs = vec![T::zero(); support.len()];
        *probs
            .get_mut(level)
            .ok_or_else(|| Error::InvalidArgument(format!("level {level} out of range")))? =
            T::one();
        Self::new(support, probs)
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn prob(&self, level: usize) -> T {
        self.probs[level]
    }

    pub fn mean(&self) -> T {
        self.support
            .values()
            .iter()
            .zip(&self.probs)
            .map(|(&y, &p)| y * p)
            .sum()
    }

    /// `P(Y <= y_level)`.
    pub fn cdf_at_level(&self, level: usize) -> T {
        self.probs[..=level].iter().copied().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_mass() {
        let s = RewardSupport::<f64>::binary();
        assert!(DiscreteDistribution::new(s.clone(), vec![0.4, 0.6]).is_ok());
        assert!(DiscreteDistribution::new(s.clone(), vec![0.4, 0.5]).is_err());
        assert!(DiscreteDistribution::new(s.clone(), vec![-0.1, 1.1]).is_err());
        assert!(DiscreteDistribution::new(s, vec![1.0]).is_err());
    }

    #[test]
    fn mean_and_cdf() {
        let s = RewardSupport::<f64>::new(vec![0.0, 0.5, 1.0], 1.0).unwrap();
        let d = DiscreteDistribution::new(s, vec![0.2, 0.3, 0.5]).unwrap();
        assert!((d.mean() - 0.65).abs() < 1e-12);
        assert!((d.cdf_at_level(1) - 0.5).abs() < 1e-12);
    }
}
