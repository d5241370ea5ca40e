use rand::Rng;
use serde::{Deserialize, Serialize};

use super::common::{metadata, Sampling};
use super::laps::sample_return_times;
use super::report::{Comparison, SuiteReport, Table};
use super::stats::tail_exponent_with;
use crate::error::Result;
use crate::maps::MapSpec;
use crate::seeding::{derive_seed, task_rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TailThresholds {
    /// Relative error allowed for the return-time exponent against `1/gamma`.
    pub relative_error: f64,
    /// Relative error allowed for the synthetic Pareto control.
    pub control_relative_error: f64,
}

impl Default for TailThresholds {
    fn default() -> Self {
        Self {
            relative_error: 0.10,
            control_relative_error: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TailConfig {
    pub excursions: usize,
    pub chain_length: usize,
    pub n_min: f64,
    pub min_tail_count: usize,
    pub grid_points: usize,
    pub control_alpha: f64,
    pub control_samples: usize,
    pub control_n_min: f64,
    pub sampling: Sampling,
    pub thresholds: TailThresholds,
}

impl Default for TailConfig {
    fn default() -> Self {
        Self {
            excursions: 1_000_000,
            chain_length: 10_000,
            n_min: 10.0,
            min_tail_count: 100,
            grid_points: 16,
            control_alpha: 1.5,
            control_samples: 1_000_000,
            control_n_min: 2.0,
            sampling: Sampling::default(),
            thresholds: TailThresholds::default(),
        }
    }
}

/// Tail exponent of the return time under `mu_Y` against `alpha = 1/gamma`,
/// with a synthetic Pareto control run through the same estimator.
pub fn tail_exponent_suite(
    spec: &MapSpec<f64>,
    config: &TailConfig,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    let mut report = SuiteReport::new("tail_exponent", metadata(config, seed));
    let (returns, truncated) = sample_return_times(
        spec,
        config.excursions,
        config.chain_length,
        &config.sampling,
        derive_seed(seed, "tail-returns"),
    )?;
    let samples: Vec<f64> = returns.iter().map(|&r| r as f64).collect();
    let fit = tail_exponent_with(&samples, config.n_min, config.min_tail_count, config.grid_points)?;
    let target = spec.alpha();

    let mut rng = task_rng(derive_seed(seed, "tail-control"), 0);
    let inv = -1.0 / config.control_alpha;
    let control: Vec<f64> = (0..config.control_samples)
        .map(|_| (1.0 - rng.random::<f64>()).powf(inv))
        .collect();
    let control_fit = tail_exponent_with(
        &control,
        config.control_n_min,
        config.min_tail_count,
        config.grid_points,
    )?;

    let mut table = Table::new("return_time_tail", &["n", "tail_probability"]);
    for &(n, p) in &fit.grid {
        table.push(vec![n, p]);
    }
    report.tables.push(table);

    let th = &config.thresholds;
    report.check(
        "alpha_relative_error",
        (fit.alpha - target).abs() / target,
        Comparison::Lt,
        th.relative_error,
    );
    report.check(
        "control_alpha_relative_error",
        (control_fit.alpha - config.control_alpha).abs() / config.control_alpha,
        Comparison::Lt,
        th.control_relative_error,
    );
    report.info("alpha_hat", fit.alpha);
    report.info("alpha_target", target);
    report.info("alpha_hat_lower_half", fit.alpha_lower);
    report.info("alpha_hat_upper_half", fit.alpha_upper);
    report.info("power_law_flag", f64::from(u8::from(fit.power_law)));
    report.info("fit_n_max", fit.n_max);
    report.info("control_alpha_hat", control_fit.alpha);
    report.info("truncated_excursions", truncated as f64);
    Ok(report)
}
