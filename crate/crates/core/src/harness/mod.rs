//! End-to-end pipeline behind the command-line tool: configuration,
//! expert data, bounds reports, bandit experiments and oracle diagnostics.

mod config;
mod experiment;
mod oracle;
mod pipeline;

pub use config::{ExperimentConfig, ModelSpec, PolicyRow, RewardLawRow, SCHEMA_VERSION};
pub use experiment::{
    mean_std, run_experiment, AggregateRow, ExperimentResults, ExperimentSummary, PolicyRuns,
    PolicySummary, SeedRun, Statistic,
};
pub use oracle::{
    oracle_check, random_model, random_oracle_check, CvarCheck, LevelCheck, OracleReport,
    ORACLE_TOLERANCE,
};
pub use pipeline::{
    bounds_pipeline, config_bounds, generate_expert_dataset, observed_joint, read_dataset,
    sample_dataset, write_dataset, write_report, ArmBounds, BoundsReport, JointSource, LevelBounds,
};
