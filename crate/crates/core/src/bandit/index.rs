use crate::cvar::{cvar_of_cdf, CvarInterval, StepCdf};
use crate::error::{Error, Result};
use crate::model::{EmpiricalCdf, RewardSupport};
use crate::scalar::Scalar;

/// Learner-side state of one arm.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmState<T> {
    pub arm: usize,
    pub cdf: EmpiricalCdf<T>,
    /// Causal CVaR bounds `[l_x, h_x]`; `h_x = +inf` disables clipping.
    pub bounds: CvarInterval<T>,
    pub pruned: bool,
}

impl<T: Scalar> ArmState<T> {
    pub fn new(arm: usize, support: RewardSupport<T>, bounds: CvarInterval<T>) -> Self {
        Self {
            arm,
            cdf: EmpiricalCdf::new(support),
            bounds,
            pruned: false,
        }
    }

    /// `T_x`, the number of pulls so far.
    pub fn pulls(&self) -> u64 {
        self.cdf.total()
    }
}

/// Keeps every arm whose upper bound reaches the best lower bound
/// `l_max = max_x l_x`. The arm attaining `l_max` always survives.
pub fn prune_arms<T: Scalar>(bounds: &[CvarInterval<T>]) -> Result<Vec<usize>> {
    if bounds.is_empty() {
        return Err(Error::InvalidArgument("no arms to prune".into()));
    }
    let l_max = bounds
        .iter()
        .map(|b| b.lower)
        .fold(T::neg_infinity(), T::max);
    Ok(bounds
        .iter()
        .enumerate()
        .filter(|(_, b)| b.upper >= l_max)
        .map(|(x, _)| x)
        .collect())
}

/// DKW radius `sqrt(ln(2 n^2) / (2 T_x))`.
pub fn exploration_radius<T: Scalar>(horizon: u64, pulls: u64) -> Result<T> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    if pulls == 0 {
        return Err(Error::InsufficientData(
            "exploration radius needs at least one pull".into(),
        ));
    }
    let n = T::from_count(horizon);
    let two = T::lit(2.0);
    Ok(((two * n * n).ln() / (two * T::from_count(pulls))).sqrt())
}

/// `F~(y) = max(F^(y) - eps, 0)` on `[0, U)` and `F~(U) = 1`: the empirical
/// CDF shifted down by the DKW radius, with the removed mass moved to `U`.
pub fn optimistic_cdf<T: Scalar>(cdf: &EmpiricalCdf<T>, eps: T) -> Result<StepCdf<T>> {
    let support = cdf.support();
    let upper = support.upper_bound();
    let mut atoms: Vec<T> = support.values().to_vec();
    let mut values: Vec<T> = cdf
        .level_values()?
        .into_iter()
        .map(|f| (f - eps).max(T::zero()))
        .collect();
    if *atoms.last().expect("non-empty support") < upper {
        atoms.push(upper);
        values.push(T::one());
    } else {
        *values.last_mut().expect("non-empty support") = T::one();
    }
    StepCdf::new(atoms, values)
}

/// `min { CVaR_alpha(F~_x), h_x }`.
pub fn clipped_index<T: Scalar>(arm: &ArmState<T>, eps: T, alpha: T) -> Result<T> {
    let optimistic = cvar_of_cdf(&optimistic_cdf(&arm.cdf, eps)?, alpha)?;
    Ok(optimistic.min(arm.bounds.upper))
}

/// UCB1 index `mean + sqrt(2 ln t / T_x)`, with the mean read off the
/// arm's empirical CDF.
pub fn ucb1_index<T: Scalar>(arm: &ArmState<T>, t: u64) -> Result<T> {
    let mean = arm.cdf.mean()?;
    let t = T::from_count(t.max(1));
    Ok(mean + (T::lit(2.0) * t.ln() / T::from_count(arm.pulls())).sqrt())
}

/// Arm with the largest index; ties go to the lowest arm id.
pub fn select_action<T: Scalar>(indices: &[(usize, T)]) -> Result<usize> {
    let mut best: Option<(usize, T)> = None;
    for &(arm, v) in indices {
        best = match best {
            Some((b_arm, b_v)) if v < b_v || (v == b_v && b_arm < arm) => Some((b_arm, b_v)),
            _ => Some((arm, v)),
        };
    }
    best.map(|(arm, _)| arm)
        .ok_or_else(|| Error::InvalidArgument("no arms to select from".into()))
}
