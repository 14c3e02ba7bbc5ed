use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bandit::PolicyKind;
use crate::error::{Error, Result};
use crate::model::{ConfoundedModel, RewardSupport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyRow {
    pub context: String,
    /// `P(x | c)` in arm order.
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RewardLawRow {
    pub arm: String,
    pub context: String,
    /// `P(y | x, c)` in support order.
    pub probs: Vec<f64>,
}

/// Labeled, row-major description of a [`ConfoundedModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub support: Vec<f64>,
    pub reward_upper: f64,
    pub contexts: Vec<String>,
    pub arms: Vec<String>,
    pub context_marginal: Vec<f64>,
    pub policy: Vec<PolicyRow>,
    pub reward_law: Vec<RewardLawRow>,
}

fn label_index(labels: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidConfig(format!(
                "duplicate {what} label {l:?}"
            )));
        }
    }
    Ok(map)
}

impl ModelSpec {
    pub fn build(&self) -> Result<ConfoundedModel<f64>> {
        let support = RewardSupport::new(self.support.clone(), self.reward_upper)?;
        let contexts = label_index(&self.contexts, "context")?;
        let arms = label_index(&self.arms, "arm")?;
        if self.context_marginal.len() != self.contexts.len() {
            return Err(Error::InvalidConfig(format!(
                "context_marginal has {} entries for {} contexts",
                self.context_marginal.len(),
                self.contexts.len()
            )));
        }
        let lookup = |map: &HashMap<String, usize>, key: &str, what: &str| {
            map.get(key)
                .copied()
                .ok_or_else(|| Error::InvalidConfig(format!("unknown {what} label {key:?}")))
        };

        let mut policy: Vec<Option<Vec<f64>>> = vec![None; self.contexts.len()];
        for row in &self.policy {
            let c = lookup(&contexts, &row.context, "context")?;
            if policy[c].replace(row.probs.clone()).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "policy row for context {:?} given twice",
                    row.context
                )));
            }
        }
        let policy = policy
            .into_iter()
            .enumerate()
            .map(|(c, row)| {
                row.ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "missing policy row for context {:?}",
                        self.contexts[c]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut laws: Vec<Vec<Option<Vec<f64>>>> =
            vec![vec![None; self.contexts.len()]; self.arms.len()];
        for row in &self.reward_law {
            let x = lookup(&arms, &row.arm, "arm")?;
            let c = lookup(&contexts, &row.context, "context")?;
            if laws[x][c].replace(row.probs.clone()).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "reward law for ({:?}, {:?}) given twice",
                    row.arm, row.context
                )));
            }
        }
        let laws = laws
            .into_iter()
            .enumerate()
            .map(|(x, per_context)| {
                per_context
                    .into_iter()
                    .enumerate()
                    .map(|(c, row)| {
                        row.ok_or_else(|| {
                            Error::InvalidConfig(format!(
                                "missing reward law for ({:?}, {:?})",
                                self.arms[x], self.contexts[c]
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        ConfoundedModel::new(support, self.context_marginal.clone(), policy, laws)
    }
}

fn default_horizon() -> u64 {
    5000
}

fn default_seeds() -> Vec<u64> {
    (0..15).collect()
}

fn default_dataset_size() -> u64 {
    1_000_000
}

fn default_policies() -> Vec<PolicyKind> {
    vec![PolicyKind::Clipped, PolicyKind::Unclipped, PolicyKind::Ucb1]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Versioned experiment description read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub model: ModelSpec,
    pub alpha: f64,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Number of expert records to sample when no dataset file is given.
    #[serde(default = "default_dataset_size")]
    pub dataset_size: u64,
    /// Seed for sampling the expert dataset.
    #[serde(default)]
    pub data_seed: u64,
    /// Use the model's exact observational joint instead of data.
    #[serde(default)]
    pub exact_joint: bool,
    #[serde(default = "default_policies")]
    pub policies: Vec<PolicyKind>,
    /// Existing `t,x,y` file to read instead of sampling.
    #[serde(default)]
    pub dataset_path: Option<PathBuf>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// The emotion-regulation model: one binary context with `P(C = 1) =
    /// 0.12`, two treatments, binary reward.
    pub fn emotion_regulation() -> Self {
        let row = |context: &str, probs: [f64; 2]| PolicyRow {
            context: context.into(),
            probs: probs.to_vec(),
        };
        let law = |arm: &str, context: &str, probs: [f64; 2]| RewardLawRow {
            arm: arm.into(),
            context: context.into(),
            probs: probs.to_vec(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            model: ModelSpec {
                support: vec![0.0, 1.0],
                reward_upper: 1.0,
                contexts: vec!["c0".into(), "c1".into()],
                arms: vec!["x0".into(), "x1".into()],
                context_marginal: vec![0.88, 0.12],
                policy: vec![row("c0", [0.3, 0.7]), row("c1", [0.8, 0.2])],
                reward_law: vec![
                    law("x0", "c0", [0.55, 0.45]),
                    law("x0", "c1", [0.7, 0.3]),
                    law("x1", "c0", [0.45, 0.55]),
                    law("x1", "c1", [0.9, 0.1]),
                ],
            },
            alpha: 0.75,
            horizon: default_horizon(),
            seeds: default_seeds(),
            dataset_size: default_dataset_size(),
            data_seed: 0,
            exact_joint: false,
            policies: default_policies(),
            dataset_path: None,
            output_dir: default_output_dir(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Checks the schema version, the embedded model and the run
    /// parameters. Referenced files are checked when they are opened.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidConfig(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("seed list is empty".into()));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidConfig("horizon must be positive".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::InvalidConfig("no policies selected".into()));
        }
        let mut seen = HashSet::new();
        if let Some(p) = self.policies.iter().find(|p| !seen.insert(**p)) {
            return Err(Error::InvalidConfig(format!("policy {p} listed twice")));
        }
        self.model.build()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_round_trips_through_json() {
        let c = ExperimentConfig::emotion_regulation();
        let back = ExperimentConfig::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn preset_builds_the_reference_model() {
        let m = ExperimentConfig::emotion_regulation()
            .model
            .build()
            .unwrap();
        let d1 = m.interventional_distribution(1).unwrap();
        assert!((d1.prob(1) - 0.496).abs() < 1e-12);
    }

    #[test]
    fn defaults_fill_in() {
        let mut v: serde_json::Value =
            serde_json::from_str(&ExperimentConfig::emotion_regulation().to_json().unwrap())
                .unwrap();
        let obj = v.as_object_mut().unwrap();
        for key in ["horizon", "seeds", "dataset_size", "policies", "output_dir"] {
            obj.remove(key);
        }
        let c = ExperimentConfig::from_json(&v.to_string()).unwrap();
        assert_eq!(c.horizon, 5000);
        assert_eq!(c.seeds.len(), 15);
        assert_eq!(c.dataset_size, 1_000_000);
    }

    #[test]
    fn rejects_invalid_configs() {
        let base = ExperimentConfig::emotion_regulation();

        let mut c = base.clone();
        c.schema_version = 2;
        assert!(c.validate().is_err());

        let mut c = base.clone();
        c.seeds.clear();
        assert!(c.validate().is_err());

        let mut c = base.clone();
        c.model.policy.pop();
        assert!(c.validate().is_err());

        let mut c = base.clone();
        c.model.reward_law[0].context = "c9".into();
        assert!(c.validate().is_err());

        let mut c = base.clone();
        c.model.context_marginal = vec![0.5, 0.6];
        assert!(c.validate().is_err());

        let mut c = base.clone();
        c.policies = vec![PolicyKind::Ucb1, PolicyKind::Ucb1];
        assert!(c.validate().is_err());

        let mut c = base;
        c.alpha = 0.0;
        assert!(c.validate().is_err());

        assert!(ExperimentConfig::from_json(r#"{"schema_version": 1}"#).is_err());
    }
}
