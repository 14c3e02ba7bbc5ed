//! CVaR of discrete laws and step CDFs, and propagation of per-level
//! probability intervals into CVaR intervals.

mod cdf;
mod interval;
mod point;

pub use cdf::StepCdf;
pub use interval::{
    cvar_bounds_binary, cvar_bounds_general, cvar_bounds_two_point, cvar_interval_general,
    grid_cvar_bounds, CvarInterval, OutcomeIntervalSet,
};
pub use point::{cvar_discrete, cvar_of_cdf};
