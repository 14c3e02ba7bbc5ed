use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use causal_cvar::harness::{
    config_bounds, generate_expert_dataset, oracle_check, random_oracle_check, run_experiment,
    write_dataset, ExperimentConfig, OracleReport,
};
use causal_cvar::Result;

/// Causal CVaR bounds and bound-clipped risk-averse bandits.
#[derive(Debug, Parser)]
#[command(name = "causal-cvar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Experiment config (JSON). Defaults to the built-in emotion-regulation model.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory. Defaults to the config's `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an expert dataset and write it as `dataset.csv`.
    GenData {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of records; overrides `dataset_size`.
        #[arg(long)]
        records: Option<u64>,
    },
    /// Compute probability and CVaR bounds and write `bounds.json`.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Seed for sampling the expert dataset; overrides `data_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Use the model's exact observational joint.
        #[arg(long)]
        exact_joint: bool,
        /// Read expert data from this `t,x,y` file.
        #[arg(long, conflicts_with = "exact_joint")]
        dataset: Option<PathBuf>,
    },
    /// Run the bandit experiment grid and write traces, `aggregate.csv` and
    /// `summary.json`.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Run this single seed instead of the config's seed list.
        #[arg(long)]
        seed: Option<u64>,
        /// Compute the clipping bounds from the exact observational joint.
        #[arg(long)]
        exact_joint: bool,
        #[arg(long, conflicts_with = "exact_joint")]
        dataset: Option<PathBuf>,
    },
    /// Compare the solvers against grid oracles and write `oracle.json`.
    /// Exits with status 2 when a gap exceeds 1e-3.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        /// Grid step of the bound-program oracle.
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
        /// Also check this many random instances.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Seed for the random instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(common: &Common) -> Result<(ExperimentConfig, PathBuf)> {
    let config = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::emotion_regulation(),
    };
    let out = common
        .out
        .clone()
        .unwrap_or_else(|| config.output_dir.clone());
    Ok((config, out))
}

fn apply_source(config: &mut ExperimentConfig, exact_joint: bool, dataset: Option<PathBuf>) {
    if exact_joint {
        config.exact_joint = true;
    }
    if let Some(path) = dataset {
        config.exact_joint = false;
        config.dataset_path = Some(path);
    }
}

fn report_path(out: &Path, name: &str) -> PathBuf {
    out.join(name)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenData {
            common,
            seed,
            records,
        } => {
            let (mut config, out) = load(&common)?;
            if let Some(n) = records {
                config.dataset_size = n;
            }
            let data = generate_expert_dataset(&config, seed)?;
            let path = report_path(&out, "dataset.csv");
            write_dataset(&data, &path)?;
            println!("wrote {} records to {}", data.len(), path.display());
        }
        Command::Bounds {
            common,
            seed,
            exact_joint,
            dataset,
        } => {
            let (mut config, out) = load(&common)?;
            apply_source(&mut config, exact_joint, dataset);
            let report = config_bounds(&config, seed.unwrap_or(config.data_seed))?;
            let path = report_path(&out, "bounds.json");
            report.write(&path)?;
            println!("alpha = {}", report.alpha);
            for arm in &report.arms {
                println!(
                    "arm {:>4}: CVaR in [{:.4}, {:.4}]  true {:.4}",
                    arm.label,
                    arm.cvar.lower,
                    arm.cvar.upper,
                    arm.true_cvar.unwrap_or(f64::NAN)
                );
            }
            println!("wrote {}", path.display());
        }
        Command::Simulate {
            common,
            seed,
            exact_joint,
            dataset,
        } => {
            let (mut config, out) = load(&common)?;
            apply_source(&mut config, exact_joint, dataset);
            if let Some(s) = seed {
                config.seeds = vec![s];
            }
            let results = run_experiment(&config)?;
            results.write(&out)?;
            for p in results.summary()?.policies {
                println!(
                    "{:>9}: final CVaR regret {:.3} +- {:.3}, mean regret {:.3} +- {:.3}",
                    p.policy.name(),
                    p.final_cvar_regret.mean,
                    p.final_cvar_regret.std,
                    p.final_mean_regret.mean,
                    p.final_mean_regret.std
                );
            }
            println!("wrote results to {}", out.display());
        }
        Command::OracleCheck {
            common,
            resolution,
            random,
            seed,
        } => {
            let (config, out) = load(&common)?;
            let model = config.model.build()?;
            let mut reports = vec![oracle_check(
                &model.exact_joint_table(),
                model.context_marginal(),
                config.alpha,
                resolution,
            )?];
            if random > 0 {
                reports.push(random_oracle_check(random, seed, config.alpha, resolution)?);
            }
            let report = OracleReport::combine(reports).expect("at least one report");
            let path = report_path(&out, "oracle.json");
            causal_cvar::harness::write_report(&path, &report)?;
            println!(
                "max probability gap {:.3e}, max CVaR gap {:.3e}: {}",
                report.max_probability_gap,
                report.max_cvar_gap,
                if report.passed { "ok" } else { "FAILED" }
            );
            if !report.passed {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
