use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::pipeline::{config_bounds, write_report, BoundsReport};
use crate::bandit::{run_episode, BanditConfig, PolicyKind, RegretTrace};
use crate::cvar::CvarInterval;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    pub trace: RegretTrace<f64>,
}

#[derive(Debug, Clone)]
pub struct PolicyRuns {
    pub policy: PolicyKind,
    pub runs: Vec<SeedRun>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    /// Bounds used by the clipped policy, when it was run.
    pub bounds: Option<BoundsReport>,
    pub policies: Vec<PolicyRuns>,
}

/// Sample mean and sample standard deviation (`n - 1` denominator; zero for a
/// single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AggregateRow {
    /// Total pulls so far, `1..=n`.
    pub step: u64,
    pub policy: PolicyKind,
    pub mean_cum_cvar_regret: f64,
    pub std_cum_cvar_regret: f64,
    pub mean_cum_mean_regret: f64,
    pub std_cum_mean_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistic {
    pub mean: f64,
    pub std: f64,
    pub per_seed: Vec<f64>,
}

impl Statistic {
    fn of(per_seed: Vec<f64>) -> Self {
        let (mean, std) = mean_std(&per_seed);
        Self {
            mean,
            std,
            per_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy: PolicyKind,
    pub kept_arms: Vec<usize>,
    pub final_cvar_regret: Statistic,
    pub final_mean_regret: Statistic,
    /// Mean `T_x(n)` per arm.
    pub mean_pulls: Vec<f64>,
    /// `T_x(n)` per seed, then per arm.
    pub pulls: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub alpha: f64,
    pub horizon: u64,
    pub seeds: Vec<u64>,
    pub arms: Vec<String>,
    pub true_cvars: Vec<f64>,
    pub true_means: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cvar_bounds: Option<Vec<CvarInterval<f64>>>,
    pub policies: Vec<PolicySummary>,
}

/// Runs every `(policy, seed)` episode of `config`. Episodes run in
/// parallel; results are collected in config order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    let model = config.model.build()?;
    let bounds = if config.policies.contains(&PolicyKind::Clipped) {
        Some(config_bounds(config, config.data_seed)?)
    } else {
        None
    };
    let intervals = bounds
        .as_ref()
        .map(|b| b.cvar_intervals())
        .unwrap_or_default();
    let jobs: Vec<(PolicyKind, u64)> = config
        .policies
        .iter()
        .flat_map(|&p| config.seeds.iter().map(move |&s| (p, s)))
        .collect();
    let traces = jobs
        .par_iter()
        .map(|&(policy, seed)| {
            let bandit = BanditConfig::new(
                config.alpha,
                config.model.reward_upper,
                config.horizon,
                policy,
            )?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            run_episode(&model, &bandit, &intervals, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut traces = traces.into_iter();
    let policies = config
        .policies
        .iter()
        .map(|&policy| PolicyRuns {
            policy,
            runs: config
                .seeds
                .iter()
                .map(|&seed| SeedRun {
                    seed,
                    trace: traces.next().expect("one trace per job"),
                })
                .collect(),
        })
        .collect();
    Ok(ExperimentResults {
        config: config.clone(),
        bounds,
        policies,
    })
}

impl ExperimentResults {
    pub fn policy(&self, policy: PolicyKind) -> Option<&PolicyRuns> {
        self.policies.iter().find(|p| p.policy == policy)
    }

    /// Across-seed mean and standard deviation of both regret curves at
    /// every step, ordered by policy then step.
    pub fn aggregate(&self) -> Vec<AggregateRow> {
        let mut rows = Vec::new();
        for p in &self.policies {
            let len = p
                .runs
                .iter()
                .map(|r| r.trace.steps.len())
                .min()
                .unwrap_or(0);
            for i in 0..len {
                let cvar: Vec<f64> = p.runs.iter().map(|r| r.trace.cum_cvar_regret[i]).collect();
                let mean: Vec<f64> = p.runs.iter().map(|r| r.trace.cum_mean_regret[i]).collect();
                let (mc, sc) = mean_std(&cvar);
                let (mm, sm) = mean_std(&mean);
                rows.push(AggregateRow {
                    step: i as u64 + 1,
                    policy: p.policy,
                    mean_cum_cvar_regret: mc,
                    std_cum_cvar_regret: sc,
                    mean_cum_mean_regret: mm,
                    std_cum_mean_regret: sm,
                });
            }
        }
        rows
    }

    pub fn summary(&self) -> Result<ExperimentSummary> {
        let first = self
            .policies
            .first()
            .and_then(|p| p.runs.first())
            .ok_or_else(|| Error::InvalidConfig("experiment produced no runs".into()))?;
        let policies = self
            .policies
            .iter()
            .map(|p| {
                let pulls: Vec<Vec<u64>> = p.runs.iter().map(|r| r.trace.pulls.clone()).collect();
                let arms = pulls.first().map_or(0, Vec::len);
                let mean_pulls = (0..arms)
                    .map(|x| pulls.iter().map(|s| s[x] as f64).sum::<f64>() / pulls.len() as f64)
                    .collect();
                PolicySummary {
                    policy: p.policy,
                    kept_arms: p.runs[0].trace.kept.clone(),
                    final_cvar_regret: Statistic::of(
                        p.runs.iter().map(|r| r.trace.final_cvar_regret()).collect(),
                    ),
                    final_mean_regret: Statistic::of(
                        p.runs.iter().map(|r| r.trace.final_mean_regret()).collect(),
                    ),
                    mean_pulls,
                    pulls,
                }
            })
            .collect();
        Ok(ExperimentSummary {
            alpha: self.config.alpha,
            horizon: self.config.horizon,
            seeds: self.config.seeds.clone(),
            arms: self.config.model.arms.clone(),
            true_cvars: first.trace.true_cvars.clone(),
            true_means: first.trace.true_means.clone(),
            cvar_bounds: self.bounds.as_ref().map(|b| b.cvar_intervals()),
            policies,
        })
    }

    pub fn write_aggregate<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        for row in self.aggregate() {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `traces/<policy>_seed<k>.csv`, `aggregate.csv`,
    /// `summary.json` and, when computed, `bounds.json` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        let traces = dir.join("traces");
        fs::create_dir_all(&traces)?;
        for p in &self.policies {
            for r in &p.runs {
                let path = traces.join(format!("{}_seed{}.csv", p.policy, r.seed));
                r.trace.write_csv(BufWriter::new(File::create(path)?))?;
            }
        }
        self.write_aggregate(BufWriter::new(File::create(dir.join("aggregate.csv"))?))?;
        write_report(&dir.join("summary.json"), &self.summary()?)?;
        if let Some(b) = &self.bounds {
            b.write(&dir.join("bounds.json"))?;
        }
        Ok(())
    }
}
