use super::cdf::StepCdf;
use crate::error::{Error, Result};
use crate::model::DiscreteDistribution;
use crate::scalar::Scalar;

pub(crate) fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidAlpha(alpha.as_f64()));
    }
    Ok(())
}

/// Lower-tail CVaR of a pmf on increasing `values`. With `k` the first
/// level whose cumulative mass reaches `alpha`, the value is
/// `y_k - (1/alpha) sum_{i<k} p_i (y_k - y_i)`.
pub(crate) fn cvar_of_pmf<T: Scalar>(values: &[T], probs: &[T], alpha: T) -> T {
    let last = values.len() - 1;
    let mut cumulative = T::zero();
    let mut weighted = T::zero();
    for (i, (&y, &p)) in values.iter().zip(probs).enumerate() {
        if i == last || cumulative + p >= alpha {
            let shortfall = (y * cumulative - weighted).max(T::zero());
            return y - shortfall / alpha;
        }
        cumulative = cumulative + p;
        weighted = weighted + y * p;
    }
    unreachable!("loop returns at the last level")
}

/// `CVaR_alpha` of a discrete reward law (lower tail; higher is better).
pub fn cvar_discrete<T: Scalar>(dist: &DiscreteDistribution<T>, alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    Ok(cvar_of_pmf(dist.support().values(), dist.probs(), alpha))
}

/// `CVaR_alpha` of a step CDF on `[0, U]` through
/// `sup_nu { nu - (1/alpha) int_0^nu F(t) dt }`, attained at the VaR
/// `nu* = inf { t : F(t) >= alpha }`.
pub fn cvar_of_cdf<T: Scalar>(cdf: &StepCdf<T>, alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    if cdf.terminal_value() < T::one() - T::prob_tol() {
        return Err(Error::InvalidCdf(format!(
            "F(U) = {} < 1",
            cdf.terminal_value()
        )));
    }
    let atoms = cdf.atoms();
    let values = cdf.values();
    let var_index = values
        .iter()
        .position(|&f| f >= alpha)
        .unwrap_or(atoms.len() - 1);
    let nu = atoms[var_index];
    let integral: T = (0..var_index)
        .map(|i| values[i] * (atoms[i + 1] - atoms[i]))
        .sum();
    Ok(nu - integral / alpha)
}
