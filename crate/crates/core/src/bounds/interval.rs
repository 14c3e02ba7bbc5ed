use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Closed interval `[LB(y, x), UB(y, x)]` on an interventional probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityInterval<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> ProbabilityInterval<T> {
    /// Validates `0 <= lower <= upper <= 1`; round-off within the
    /// feasibility tolerance is clamped away.
    pub fn new(lower: T, upper: T) -> Result<Self> {
        let tol = T::feas_tol();
        if lower.is_nan()
            || upper.is_nan()
            || lower < -tol
            || upper > T::one() + tol
            || lower > upper + tol
        {
            return Err(Error::InvalidInterval(format!(
                "[{lower}, {upper}] is not a sub-interval of [0, 1]"
            )));
        }
        let lower = lower.max(T::zero()).min(T::one());
        let upper = upper.min(T::one()).max(lower);
        Ok(Self { lower, upper })
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }

    pub fn contains(&self, p: T, slack: T) -> bool {
        p >= self.lower - slack && p <= self.upper + slack
    }

    /// `self ⊆ other`, with `other` inflated by `slack`.
    pub fn is_within(&self, other: &Self, slack: T) -> bool {
        self.lower >= other.lower - slack && self.upper <= other.upper + slack
    }
}
