use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Scalar};

use super::episode::RegretTrace;

/// Sub-optimality gaps `max_i v_i - v_x` over all arms.
pub fn gaps<T: Scalar>(values: &[T]) -> Vec<T> {
    let best = values.iter().copied().fold(T::neg_infinity(), T::max);
    values.iter().map(|&v| best - v).collect()
}

/// Running sum of the gap of each chosen arm.
pub fn cumulative_regret<T: Scalar>(chosen: &[usize], values: &[T]) -> Result<Vec<T>> {
    let gaps = gaps(values);
    let mut acc = CompensatedSum::new();
    chosen
        .iter()
        .map(|&arm| {
            let gap = gaps.get(arm).copied().ok_or(Error::ArmOutOfRange {
                arm,
                num_arms: values.len(),
            })?;
            acc.add(gap);
            Ok(acc.value())
        })
        .collect()
}

/// Cumulative CVaR regret curve of a trace, from the true CVaR of every arm
/// (pruned ones included).
pub fn cvar_regret<T: Scalar>(trace: &RegretTrace<T>, true_cvars: &[T]) -> Result<Vec<T>> {
    if true_cvars.len() != trace.pulls.len() {
        return Err(Error::InvalidArgument(format!(
            "{} true CVaRs for {} arms",
            true_cvars.len(),
            trace.pulls.len()
        )));
    }
    cumulative_regret(&trace.chosen_arms(), true_cvars)
}

/// `sum_x gap_x T_x(n)`, accumulated in arm order.
pub fn regret_decomposition<T: Scalar>(pulls: &[u64], values: &[T]) -> Result<T> {
    if pulls.len() != values.len() {
        return Err(Error::InvalidArgument(format!(
            "{} pull counts for {} arms",
            pulls.len(),
            values.len()
        )));
    }
    Ok(gaps(values)
        .into_iter()
        .zip(pulls)
        .fold(T::zero(), |acc, (g, &n)| acc + g * T::from_count(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_example() {
        let values = [0.243_f64, 0.328];
        let g = gaps(&values);
        assert!((g[0] - 0.085).abs() < 1e-12);
        assert_eq!(g[1], 0.0);
        let r = regret_decomposition(&[10, 90], &values).unwrap();
        assert!((r - 0.85).abs() < 1e-12);
    }

    #[test]
    fn optimal_play_has_no_regret() {
        let curve = cumulative_regret(&[1; 50], &[0.243, 0.328]).unwrap();
        assert!(curve.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn curve_matches_decomposition() {
        let values = [0.1_f64, 0.7, 0.45];
        let chosen: Vec<usize> = (0..10_000).map(|i| (i * 7 + i / 3) % 3).collect();
        let curve = cumulative_regret(&chosen, &values).unwrap();
        let mut pulls = [0u64; 3];
        for &a in &chosen {
            pulls[a] += 1;
        }
        let decomposed = regret_decomposition(&pulls, &values).unwrap();
        assert!((curve.last().unwrap() - decomposed).abs() <= 1e-12);
        assert!(curve.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn mismatched_arms() {
        assert!(cumulative_regret(&[3], &[0.1, 0.2]).is_err());
        assert!(regret_decomposition(&[1, 2, 3], &[0.1, 0.2]).is_err());
    }
}
