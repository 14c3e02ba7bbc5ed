//! Probabilistic domain types: reward supports, discrete laws, the
//! confounded expert model, observational logs and empirical CDFs.

mod confounded;
mod dataset;
mod distribution;
mod ecdf;
mod joint;
mod support;

pub(crate) use confounded::weighted_index;
pub use confounded::{ConfoundedModel, ExpertSample};
pub use dataset::{ObservationalDataset, Record};
pub(crate) use distribution::check_probability_vector;
pub use distribution::DiscreteDistribution;
pub use ecdf::EmpiricalCdf;
pub use joint::JointActionRewardTable;
pub use support::RewardSupport;
