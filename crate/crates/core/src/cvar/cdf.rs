use crate::error::{Error, Result};
use crate::model::DiscreteDistribution;
use crate::scalar::Scalar;

/// Right-continuous step CDF on `[0, U]` with jumps at `atoms`.
///
/// `values[i]` is `F(atoms[i])`; `F` is zero below the first atom and
/// constant between atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCdf<T> {
    atoms: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> StepCdf<T> {
    pub fn new(atoms: Vec<T>, values: Vec<T>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != values.len() {
            return Err(Error::InvalidCdf(format!(
                "{} atoms with {} values",
                atoms.len(),
                values.len()
            )));
        }
        let tol = T::prob_tol();
        for i in 0..atoms.len() {
            if atoms[i] < T::zero() || !atoms[i].is_finite() {
                return Err(Error::InvalidCdf(format!(
                    "atom {} outside [0, inf)",
                    atoms[i]
                )));
            }
            if values[i] < -tol || values[i] > T::one() + tol || values[i].is_nan() {
                return Err(Error::InvalidCdf(format!(
                    "value {} outside [0, 1]",
                    values[i]
                )));
            }
            if i > 0 {
                if !(atoms[i - 1] < atoms[i]) {
                    return Err(Error::InvalidCdf(
                        "atoms must be strictly increasing".into(),
                    ));
                }
                if values[i] < values[i - 1] - tol {
                    return Err(Error::InvalidCdf("CDF must be nondecreasing".into()));
                }
            }
        }
        Ok(Self { atoms, values })
    }

    pub fn from_distribution(dist: &DiscreteDistribution<T>) -> Self {
        let atoms = dist.support().values().to_vec();
        let mut acc = T::zero();
        let values = dist
            .probs()
            .iter()
            .map(|&p| {
                acc = acc + p;
                acc.min(T::one())
            })
            .collect();
        Self { atoms, values }
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn evaluate(&self, y: T) -> T {
        match self.atoms.partition_point(|&a| a <= y) {
            0 => T::zero(),
            k => self.values[k - 1],
        }
    }

    /// Value at the last atom; a proper CDF on `[0, U]` has this equal to 1.
    pub fn terminal_value(&self) -> T {
        *self.values.last().expect("non-empty")
    }

    /// Jump sizes at each atom.
    pub fn masses(&self) -> Vec<T> {
        let mut prev = T::zero();
        self.values
            .iter()
            .map(|&v| {
                let m = (v - prev).max(T::zero());
                prev = v;
                m
            })
            .collect()
    }
}
