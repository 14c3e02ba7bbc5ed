//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type the probability and CVaR routines are written against.
///
/// Implemented for `f32` and `f64`. Tolerances scale with the precision of the
/// concrete type so that validation stays meaningful for both.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used when validating probability vectors.
    fn prob_tol() -> Self;

    /// Tolerance used when checking feasibility of optimizer certificates.
    fn feas_tol() -> Self;

    /// Values below this are treated as exactly zero in ratio terms.
    fn zero_tol() -> Self;

    /// Converts an `f64` literal. Panics only for values that are not
    /// representable at all, which never happens for the constants used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn prob_tol() -> Self {
        1e-9
    }
    fn feas_tol() -> Self {
        1e-7
    }
    fn zero_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn prob_tol() -> Self {
        1e-5
    }
    fn feas_tol() -> Self {
        1e-4
    }
    fn zero_tol() -> Self {
        1e-7
    }
}

/// Neumaier compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation = self.compensation + ((self.sum - t) + x);
        } else {
            self.compensation = self.compensation + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}
