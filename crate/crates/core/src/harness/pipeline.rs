use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::ExperimentConfig;
use crate::bounds::{
    do_probability_interval, tian_pearl_bounds, ProbabilityInterval, ProgramSolution, SolverOptions,
};
use crate::cvar::{
    cvar_bounds_two_point, cvar_discrete, cvar_interval_general, CvarInterval, OutcomeIntervalSet,
};
use crate::error::{Error, Result};
use crate::model::{ConfoundedModel, JointActionRewardTable, ObservationalDataset, Record};

/// Samples `config.dataset_size` expert records and drops the contexts.
pub fn generate_expert_dataset(
    config: &ExperimentConfig,
    seed: u64,
) -> Result<ObservationalDataset<f64>> {
    let model = config.model.build()?;
    sample_dataset(&model, config.dataset_size, seed)
}

pub fn sample_dataset(
    model: &ConfoundedModel<f64>,
    records: u64,
    seed: u64,
) -> Result<ObservationalDataset<f64>> {
    if records == 0 {
        return Err(Error::InvalidArgument(
            "expert dataset size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..records)
        .map(|_| {
            let s = model.sample_expert_step(&mut rng);
            Record {
                action: s.action,
                level: s.level,
            }
        })
        .collect();
    ObservationalDataset::new(model.support().clone(), model.num_arms(), data)
}

pub fn write_dataset(dataset: &ObservationalDataset<f64>, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    dataset.write_csv(BufWriter::new(File::create(path)?))
}

pub fn read_dataset(
    path: &Path,
    model: &ConfoundedModel<f64>,
) -> Result<ObservationalDataset<f64>> {
    let file = File::open(path).map_err(|e| {
        Error::InvalidConfig(format!("cannot open dataset {}: {e}", path.display()))
    })?;
    ObservationalDataset::read_csv(file, model.support().clone(), model.num_arms())
}

/// Where the observational joint came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JointSource {
    Exact,
    Sampled { records: u64, seed: u64 },
    File { path: PathBuf, records: u64 },
}

/// The joint `P(x, y)` the bounds are computed from: the exact one, a
/// dataset file, or a freshly sampled dataset, in that order of precedence.
pub fn observed_joint(
    config: &ExperimentConfig,
    model: &ConfoundedModel<f64>,
    seed: u64,
) -> Result<(JointActionRewardTable<f64>, JointSource)> {
    if config.exact_joint {
        return Ok((model.exact_joint_table(), JointSource::Exact));
    }
    if let Some(path) = &config.dataset_path {
        let data = read_dataset(path, model)?;
        let source = JointSource::File {
            path: path.clone(),
            records: data.len() as u64,
        };
        return Ok((data.joint_table()?, source));
    }
    let data = sample_dataset(model, config.dataset_size, seed)?;
    let source = JointSource::Sampled {
        records: config.dataset_size,
        seed,
    };
    Ok((data.joint_table()?, source))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelBounds {
    pub level: usize,
    pub reward: f64,
    /// `[P(x, y), 1 - P(x, y')]`, for comparison.
    pub tian_pearl: ProbabilityInterval<f64>,
    pub causal: ProbabilityInterval<f64>,
    pub lower: ProgramSolution<f64>,
    pub upper: ProgramSolution<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmBounds {
    pub arm: usize,
    pub label: String,
    pub observational_mass: f64,
    pub levels: Vec<LevelBounds>,
    pub cvar: CvarInterval<f64>,
    pub cvar_method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_do: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_cvar: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub alpha: f64,
    pub source: JointSource,
    pub context_marginal: Vec<f64>,
    /// `P(x, y)`, one row per arm.
    pub joint: Vec<Vec<f64>>,
    pub arms: Vec<ArmBounds>,
}

impl BoundsReport {
    pub fn cvar_intervals(&self) -> Vec<CvarInterval<f64>> {
        self.arms.iter().map(|a| a.cvar).collect()
    }

    /// Replaces the numeric arm labels and records the true interventional
    /// quantities of `model`.
    pub fn annotate(&mut self, labels: &[String], model: &ConfoundedModel<f64>) -> Result<()> {
        for arm in &mut self.arms {
            if let Some(l) = labels.get(arm.arm) {
                arm.label = l.clone();
            }
            let law = model.interventional_distribution(arm.arm)?;
            arm.true_cvar = Some(cvar_discrete(&law, self.alpha)?);
            arm.true_do = Some(law.probs().to_vec());
        }
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_report(path, self)
    }
}

pub fn write_report<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Probability bounds for every `(arm, level)` followed by the CVaR
/// interval of every arm.
pub fn bounds_pipeline(
    joint: &JointActionRewardTable<f64>,
    context_marginal: &[f64],
    alpha: f64,
    source: JointSource,
    options: &SolverOptions,
) -> Result<BoundsReport> {
    let support = joint.support();
    let arms = (0..joint.num_arms())
        .map(|x| {
            let levels = (0..support.len())
                .map(|level| {
                    let b = do_probability_interval(joint, context_marginal, x, level, options)?;
                    Ok(LevelBounds {
                        level,
                        reward: support.value(level),
                        tian_pearl: tian_pearl_bounds(joint, x, level)?,
                        causal: b.interval,
                        lower: b.lower,
                        upper: b.upper,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (cvar, cvar_method) = if support.len() == 2 {
                let c = cvar_bounds_two_point(
                    support.value(0),
                    support.value(1),
                    levels[1].causal,
                    alpha,
                )?;
                (c, "two-point closed form")
            } else {
                let set = OutcomeIntervalSet::new(
                    support.clone(),
                    levels.iter().map(|l| l.causal).collect(),
                )?;
                (cvar_interval_general(&set, alpha)?, "branch enumeration")
            };
            Ok(ArmBounds {
                arm: x,
                label: x.to_string(),
                observational_mass: joint.arm_marginal(x),
                levels,
                cvar,
                cvar_method,
                true_do: None,
                true_cvar: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsReport {
        alpha,
        source,
        context_marginal: context_marginal.to_vec(),
        joint: (0..joint.num_arms())
            .map(|x| (0..support.len()).map(|l| joint.prob(x, l)).collect())
            .collect(),
        arms,
    })
}

/// Full bounds run for a config: builds the model, obtains the joint and
/// annotates the report with labels and true values.
pub fn config_bounds(config: &ExperimentConfig, seed: u64) -> Result<BoundsReport> {
    let model = config.model.build()?;
    let (joint, source) = observed_joint(config, &model, seed)?;
    let mut report = bounds_pipeline(
        &joint,
        model.context_marginal(),
        config.alpha,
        source,
        &SolverOptions::default(),
    )?;
    report.annotate(&config.model.arms, &model)?;
    Ok(report)
}
