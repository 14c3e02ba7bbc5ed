//! Causal bounds on interventional reward laws and their CVaR, computed from
//! confounded observational bandit data, and a risk-averse UCB learner that
//! clips its optimism with those bounds.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the harness and CLI use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bandit;
pub mod bounds;
pub mod cvar;
pub mod error;
pub mod harness;
pub mod model;
pub mod scalar;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Direction of an optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

impl Sense {
    /// The preferred of two values.
    pub fn better<T: PartialOrd>(self, x: T, y: T) -> T {
        if self.strictly_better(&x, &y) {
            x
        } else {
            y
        }
    }

    pub fn strictly_better<T: PartialOrd>(self, x: T, y: T) -> bool {
        match self {
            Sense::Min => x < y,
            Sense::Max => x > y,
        }
    }
}

pub type RewardSupport = model::RewardSupport<f64>;
pub type DiscreteDistribution = model::DiscreteDistribution<f64>;
pub type ConfoundedModel = model::ConfoundedModel<f64>;
pub type ObservationalDataset = model::ObservationalDataset<f64>;
pub type JointActionRewardTable = model::JointActionRewardTable<f64>;
pub type EmpiricalCdf = model::EmpiricalCdf<f64>;
pub type StepCdf = cvar::StepCdf<f64>;
pub type ProbabilityInterval = bounds::ProbabilityInterval<f64>;
pub type CvarInterval = cvar::CvarInterval<f64>;
pub type OutcomeIntervalSet = cvar::OutcomeIntervalSet<f64>;
pub type FractionalProgram = bounds::FractionalProgram<f64>;
pub type ArmState = bandit::ArmState<f64>;
pub type BanditConfig = bandit::BanditConfig<f64>;
pub type RegretTrace = bandit::RegretTrace<f64>;
