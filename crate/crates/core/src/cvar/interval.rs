use serde::Serialize;

use super::point::{check_alpha, cvar_of_pmf};
use crate::bounds::ProbabilityInterval;
use crate::error::{Error, Result};
use crate::model::RewardSupport;
use crate::scalar::Scalar;
use crate::Sense;

/// Bounds `[l_x, h_x]` on the CVaR of one arm, in reward units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CvarInterval<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> CvarInterval<T> {
    pub fn new(lower: T, upper: T) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper + T::feas_tol() {
            return Err(Error::InvalidInterval(format!(
                "CVaR interval [{lower}, {upper}] is not ordered"
            )));
        }
        Ok(Self {
            lower,
            upper: upper.max(lower),
        })
    }

    /// Checks `y_0 <= lower <= upper <= y_n`.
    pub fn within_support(&self, support: &RewardSupport<T>) -> bool {
        let tol = T::feas_tol();
        let lo = support.value(0);
        let hi = support.value(support.len() - 1);
        self.lower >= lo - tol && self.upper <= hi + tol
    }

    pub fn contains(&self, v: T, slack: T) -> bool {
        v >= self.lower - slack && v <= self.upper + slack
    }
}

/// Per-level probability intervals `a_i <= P(y_i | do(x)) <= b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeIntervalSet<T> {
    support: RewardSupport<T>,
    intervals: Vec<ProbabilityInterval<T>>,
}

impl<T: Scalar> OutcomeIntervalSet<T> {
    pub fn new(support: RewardSupport<T>, intervals: Vec<ProbabilityInterval<T>>) -> Result<Self> {
        if intervals.len() != support.len() {
            return Err(Error::InvalidInterval(format!(
                "{} intervals for {} levels",
                intervals.len(),
                support.len()
            )));
        }
        let lows: T = intervals.iter().map(|i| i.lower).sum();
        let highs: T = intervals.iter().map(|i| i.upper).sum();
        let tol = T::feas_tol();
        if lows > T::one() + tol || highs < T::one() - tol {
            return Err(Error::Infeasible(format!(
                "no probability vector fits the intervals (sum of lower {lows}, sum of upper {highs})"
            )));
        }
        Ok(Self { support, intervals })
    }

    pub fn support(&self) -> &RewardSupport<T> {
        &self.support
    }

    pub fn intervals(&self) -> &[ProbabilityInterval<T>] {
        &self.intervals
    }

    fn lows(&self) -> Vec<T> {
        self.intervals.iter().map(|i| i.lower).collect()
    }

    fn highs(&self) -> Vec<T> {
        self.intervals.iter().map(|i| i.upper).collect()
    }
}

/// Optimal CVaR over `{p : a <= p <= b, sum p = 1}`.
///
/// Enumerates the crossing index `k` (cumulative mass below `alpha` up to
/// `k`, at or above it at `k + 1`). Inside a branch the CVaR is linear in `p`
/// and depends only on the prefix allocation and its total `S`; for fixed `S`
/// the best prefix allocation is a greedy fill by reward level, so the branch
/// optimum sits at an endpoint of the feasible `S` range or at a breakpoint
/// of that greedy fill. Branch closures overlap on their boundaries, where
/// adjacent formulas agree, so boundary optima are never lost.
pub fn cvar_bounds_general<T: Scalar>(
    set: &OutcomeIntervalSet<T>,
    alpha: T,
    sense: Sense,
) -> Result<T> {
    check_alpha(alpha)?;
    let y = set.support.values();
    let a = set.lows();
    let b = set.highs();
    let n = y.len();
    let tol = T::feas_tol();
    let one = T::one();

    let mut best: Option<T> = None;
    // `crossing` is k + 1 in the branch notation: the level where the
    // cumulative mass first reaches alpha.
    for crossing in 0..n {
        let prefix = 0..crossing;
        let tail = crossing + 1..n;
        let a_pre: T = a[prefix.clone()].iter().copied().sum();
        let b_pre: T = b[prefix.clone()].iter().copied().sum();
        let a_tail: T = a[tail.clone()].iter().copied().sum();
        let b_tail: T = b[tail].iter().copied().sum();
        if a_tail > one - alpha + tol {
            continue;
        }
        let lo = a_pre
            .max(alpha - b[crossing])
            .max(one - b_tail - b[crossing]);
        let hi = b_pre.min(alpha).min(one - a_tail - a[crossing]);
        if lo > hi + tol {
            continue;
        }
        let hi = hi.max(lo);

        // Greedy fill order over the prefix: high levels first when
        // maximizing, low levels first when minimizing.
        let mut order: Vec<usize> = (0..crossing).collect();
        if sense == Sense::Max {
            order.reverse();
        }
        let prefix_value = |s: T| -> T {
            let mut remaining = (s - a_pre).max(T::zero());
            let mut acc: T = (0..crossing).map(|i| y[i] * a[i]).sum();
            for &i in &order {
                let add = remaining.min(b[i] - a[i]);
                acc = acc + y[i] * add;
                remaining = remaining - add;
            }
            acc
        };
        let objective = |s: T| (prefix_value(s) + y[crossing] * (alpha - s)) / alpha;

        let mut candidates = vec![lo, hi];
        let mut s = a_pre;
        for &i in &order {
            s = s + (b[i] - a[i]);
            if s > lo && s < hi {
                candidates.push(s);
            }
        }
        for s in candidates {
            let v = objective(s);
            best = Some(match best {
                None => v,
                Some(cur) => sense.better(v, cur),
            });
        }
    }
    best.ok_or_else(|| Error::Infeasible("no branch admits a feasible probability vector".into()))
}

/// Both senses of [`cvar_bounds_general`].
pub fn cvar_interval_general<T: Scalar>(
    set: &OutcomeIntervalSet<T>,
    alpha: T,
) -> Result<CvarInterval<T>> {
    CvarInterval::new(
        cvar_bounds_general(set, alpha, Sense::Min)?,
        cvar_bounds_general(set, alpha, Sense::Max)?,
    )
}

/// Closed form for a two-point support `{low, high}` given bounds on the
/// probability of `high`.
///
/// With `p0 = 1 - p1`, the CVaR is `low` when `p0 >= alpha` and
/// `(low p0 + high (alpha - p0)) / alpha` otherwise, nonincreasing in `p0`;
/// the extremes sit at the ends of the `p0` range. This is exactly the
/// optimum of the big-M indicator program for binary rewards.
pub fn cvar_bounds_two_point<T: Scalar>(
    low: T,
    high: T,
    p_high: ProbabilityInterval<T>,
    alpha: T,
) -> Result<CvarInterval<T>> {
    check_alpha(alpha)?;
    if !(low < high) {
        return Err(Error::InvalidSupport(format!(
            "two-point support needs {low} < {high}"
        )));
    }
    let cvar = |p0: T| {
        if p0 >= alpha {
            low
        } else {
            (low * p0 + high * (alpha - p0)) / alpha
        }
    };
    let p0_max = (T::one() - p_high.lower).min(T::one());
    let p0_min = (T::one() - p_high.upper).max(T::zero());
    CvarInterval::new(cvar(p0_max), cvar(p0_min))
}

/// [`cvar_bounds_two_point`] on the `{0, 1}` support.
pub fn cvar_bounds_binary<T: Scalar>(
    p_one: ProbabilityInterval<T>,
    alpha: T,
) -> Result<CvarInterval<T>> {
    cvar_bounds_two_point(T::zero(), T::one(), p_one, alpha)
}

/// Exhaustive simplex-grid search for the optimal CVaR, used as an
/// independent referee for [`cvar_bounds_general`]. Only practical for a
/// handful of levels.
///
/// Every level takes a turn as the coordinate fixed by `sum p = 1` while
/// the others sweep `a_i, a_i + step, ..., b_i`, so each vertex of the
/// feasible polytope appears on one of the grids.
pub fn grid_cvar_bounds<T: Scalar>(
    set: &OutcomeIntervalSet<T>,
    alpha: T,
    sense: Sense,
    step: T,
) -> Result<T> {
    check_alpha(alpha)?;
    if !(step > T::zero()) {
        return Err(Error::InvalidArgument("grid step must be positive".into()));
    }
    let n = set.support.len();
    if n > 5 {
        return Err(Error::InvalidArgument(format!(
            "simplex grid over {n} levels is too large"
        )));
    }
    let y = set.support.values();
    let a = set.lows();
    let b = set.highs();
    let axis = |i: usize| -> Vec<T> {
        let mut pts = Vec::new();
        let mut k = 0u64;
        loop {
            let v = a[i] + T::from_count(k) * step;
            if v >= b[i] {
                break;
            }
            pts.push(v);
            k += 1;
        }
        pts.push(b[i]);
        pts
    };
    let axes: Vec<Vec<T>> = (0..n).map(axis).collect();
    let tol = T::feas_tol();
    let mut p = vec![T::zero(); n];
    let mut best: Option<T> = None;
    for dep in 0..n {
        let free: Vec<usize> = (0..n).filter(|&i| i != dep).collect();
        let mut idx = vec![0usize; free.len()];
        'grid: loop {
            let mut partial = T::zero();
            for (&i, &k) in free.iter().zip(&idx) {
                p[i] = axes[i][k];
                partial = partial + p[i];
            }
            let rest = T::one() - partial;
            if rest >= a[dep] - tol && rest <= b[dep] + tol {
                p[dep] = rest.max(T::zero());
                let v = cvar_of_pmf(y, &p, alpha);
                best = Some(match best {
                    None => v,
                    Some(cur) => sense.better(v, cur),
                });
            }
            for d in 0..idx.len() {
                idx[d] += 1;
                if idx[d] < axes[free[d]].len() {
                    continue 'grid;
                }
                idx[d] = 0;
            }
            break;
        }
    }
    best.ok_or_else(|| Error::Infeasible("grid contains no feasible probability vector".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvar::cvar_discrete;
    use crate::model::DiscreteDistribution;

    fn pi(l: f64, u: f64) -> ProbabilityInterval<f64> {
        ProbabilityInterval::new(l, u).unwrap()
    }

    #[test]
    fn binary_closed_form_reproduces_reported_interval() {
        let c = cvar_bounds_binary(pi(0.4675, 0.5875), 0.75).unwrap();
        assert!((c.lower - 0.29).abs() < 1e-12);
        assert!((c.upper - 0.45).abs() < 1e-12);
    }

    #[test]
    fn binary_closed_form_first_branch() {
        let c = cvar_bounds_binary(pi(0.0, 0.2), 0.75).unwrap();
        assert_eq!((c.lower, c.upper), (0.0, 0.0));
    }

    #[test]
    fn binary_closed_form_point_interval() {
        let c = cvar_bounds_binary(pi(0.55, 0.55), 0.75).unwrap();
        assert!((c.lower - 0.4).abs() < 1e-12);
        assert!((c.upper - 0.4).abs() < 1e-12);
    }

    #[test]
    fn general_matches_binary_on_reported_interval() {
        let set = OutcomeIntervalSet::new(
            RewardSupport::binary(),
            vec![pi(0.4125, 0.5325), pi(0.4675, 0.5875)],
        )
        .unwrap();
        let c = cvar_interval_general(&set, 0.75).unwrap();
        assert!((c.lower - 0.29).abs() < 1e-12);
        assert!((c.upper - 0.45).abs() < 1e-12);
    }

    #[test]
    fn degenerate_intervals_give_the_point_cvar() {
        let s = RewardSupport::new(vec![0.0, 0.5, 1.0], 1.0).unwrap();
        let p = [0.2, 0.3, 0.5];
        let set =
            OutcomeIntervalSet::new(s.clone(), p.iter().map(|&v| pi(v, v)).collect()).unwrap();
        let d = DiscreteDistribution::new(s, p.to_vec()).unwrap();
        let truth = cvar_discrete(&d, 0.4).unwrap();
        for sense in [Sense::Min, Sense::Max] {
            assert!((cvar_bounds_general(&set, 0.4, sense).unwrap() - truth).abs() < 1e-12);
        }
    }

    #[test]
    fn three_level_instance_matches_grid_referee() {
        let s = RewardSupport::new(vec![0.0, 0.5, 1.0], 1.0).unwrap();
        let set =
            OutcomeIntervalSet::new(s, vec![pi(0.1, 0.3), pi(0.2, 0.4), pi(0.4, 0.6)]).unwrap();
        for sense in [Sense::Min, Sense::Max] {
            let exact = cvar_bounds_general(&set, 0.4, sense).unwrap();
            let grid = grid_cvar_bounds(&set, 0.4, sense, 1e-2).unwrap();
            assert!((exact - grid).abs() < 1e-9, "{sense:?}: {exact} vs {grid}");
        }
        // min: p = (0.3, 0.3, 0.4) gives (0.5 * 0.1) / 0.4 = 0.125
        // max: p2 <= 0.6 forces p0 + p1 >= 0.4, best is p = (0.1, 0.3, 0.6)
        // giving (0.5 * 0.3) / 0.4 = 0.375
        assert!((cvar_bounds_general(&set, 0.4, Sense::Min).unwrap() - 0.125).abs() < 1e-12);
        assert!((cvar_bounds_general(&set, 0.4, Sense::Max).unwrap() - 0.375).abs() < 1e-12);
    }

    #[test]
    fn empty_simplex_slice_is_rejected() {
        let s = RewardSupport::<f64>::binary();
        assert!(OutcomeIntervalSet::new(s.clone(), vec![pi(0.6, 0.7), pi(0.6, 0.7)]).is_err());
        assert!(OutcomeIntervalSet::new(s, vec![pi(0.1, 0.2), pi(0.1, 0.2)]).is_err());
    }

    #[test]
    fn shifted_two_point_support() {
        // support {0.2, 0.8}: p0 in [0.3, 0.5], alpha 0.6
        let c = cvar_bounds_two_point(0.2, 0.8, pi(0.5, 0.7), 0.6).unwrap();
        let f = |p0: f64| (0.2 * p0 + 0.8 * (0.6 - p0)) / 0.6;
        assert!((c.lower - f(0.5)).abs() < 1e-12);
        assert!((c.upper - f(0.3)).abs() < 1e-12);
    }
}
