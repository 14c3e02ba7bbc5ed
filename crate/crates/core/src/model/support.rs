use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered, finite set of reward levels `y_0 < ... < y_n` inside `[0, U]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardSupport<T> {
    values: Vec<T>,
    upper_bound: T,
}

impl<T: Scalar> RewardSupport<T> {
    pub fn new(values: Vec<T>, upper_bound: T) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSupport("support is empty".into()));
        }
        if !(upper_bound > T::zero()) || !upper_bound.is_finite() {
            return Err(Error::InvalidSupport(format!(
                "upper bound must be positive and finite, got {upper_bound}"
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < T::zero() || v > upper_bound {
                return Err(Error::InvalidSupport(format!(
                    "level {v} lies outside [0, {upper_bound}]"
                )));
            }
            if i > 0 && !(values[i - 1] < v) {
                return Err(Error::InvalidSupport(
                    "levels must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            values,
            upper_bound,
        })
    }

    /// The `{0, 1}` support with `U = 1`.
    pub fn binary() -> Self {
        Self {
            values: vec![T::zero(), T::one()],
            upper_bound: T::one(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, level: usize) -> T {
        self.values[level]
    }

    pub fn upper_bound(&self) -> T {
        self.upper_bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.values.len() == 2
    }

    /// Index of the level equal to `y` up to the probability tolerance.
    pub fn level_of(&self, y: T) -> Option<usize> {
        let tol = T::prob_tol();
        self.values.iter().position(|&v| (v - y).abs() <= tol)
    }

    /// Number of levels `<= y`.
    pub fn levels_at_or_below(&self, y: T) -> usize {
        self.values.partition_point(|&v| v <= y)
    }
}
