use super::interval::ProbabilityInterval;
use crate::error::Result;
use crate::model::JointActionRewardTable;
use crate::scalar::Scalar;

/// Assumption-free bounds `[P(x, y), 1 - P(x, y')]` on `P(y | do(x))`,
/// where `P(x, y')` is the mass of arm `x` on every other level.
pub fn tian_pearl_bounds<T: Scalar>(
    joint: &JointActionRewardTable<T>,
    arm: usize,
    level: usize,
) -> Result<ProbabilityInterval<T>> {
    joint.check_cell(arm, level)?;
    ProbabilityInterval::new(
        joint.prob(arm, level),
        T::one() - joint.complement(arm, level),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RewardSupport;

    fn joint(entries: Vec<Vec<f64>>) -> JointActionRewardTable<f64> {
        JointActionRewardTable::new(RewardSupport::binary(), entries).unwrap()
    }

    #[test]
    fn exact_joint_example() {
        let j = joint(vec![vec![0.2124, 0.1476], vec![0.2988, 0.3412]]);
        let b = tian_pearl_bounds(&j, 1, 1).unwrap();
        assert!((b.lower - 0.3412).abs() < 1e-12);
        assert!((b.upper - 0.7012).abs() < 1e-12);
    }

    #[test]
    fn unobserved_arm_is_vacuous() {
        let j = joint(vec![vec![0.4, 0.6], vec![0.0, 0.0]]);
        let b = tian_pearl_bounds(&j, 1, 1).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 1.0));
    }

    #[test]
    fn deterministic_arm() {
        let j = joint(vec![vec![0.7, 0.0], vec![0.0, 0.3]]);
        let b = tian_pearl_bounds(&j, 1, 1).unwrap();
        assert_eq!((b.lower, b.upper), (0.3, 1.0));
    }

    #[test]
    fn out_of_range_cell() {
        let j = joint(vec![vec![0.5, 0.5]]);
        assert!(tian_pearl_bounds(&j, 1, 0).is_err());
        assert!(tian_pearl_bounds(&j, 0, 2).is_err());
    }
}
