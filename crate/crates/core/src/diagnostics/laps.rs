use serde::{Deserialize, Serialize};

use super::common::{check_grid, metadata, max_step, Sampling};
use super::report::{Comparison, SuiteReport, Table};
use super::stats::median;
use crate::error::{Error, Result};
use crate::inducing::{induced_start, lap_numbers, return_time, LapTrace};
use crate::maps::{sample_initial, MapSpec};
use crate::seeding::{derive_seed, task_rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LapThresholds {
    /// Bound on `|mu(Y) * mean return - 1|`.
    pub kac_tolerance: f64,
    pub min_decrease: f64,
}

impl Default for LapThresholds {
    fn default() -> Self {
        Self {
            kac_tolerance: 0.02,
            min_decrease: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LapConfig {
    pub horizon: f64,
    pub k_grid: Vec<usize>,
    pub trials: usize,
    /// Excursions for the mean return time; 0 skips the Kac check.
    pub kac_excursions: usize,
    /// Excursions per independent induced orbit in the Kac sample.
    pub kac_chain_length: usize,
    pub sampling: Sampling,
    pub thresholds: LapThresholds,
}

impl Default for LapConfig {
    fn default() -> Self {
        Self {
            horizon: 1.0,
            k_grid: vec![1000, 10_000, 100_000],
            trials: 200,
            kac_excursions: 1_000_000,
            kac_chain_length: 10_000,
            sampling: Sampling::default(),
            thresholds: LapThresholds::default(),
        }
    }
}

/// `sup_{t <= T} |N_{[tk]} / k - t mu|` from a trace of horizon at least `[Tk]`.
pub fn lap_sup_error(trace: &LapTrace, k: usize, horizon: f64, mu_y: f64) -> f64 {
    let kf = k as f64;
    let m = (horizon * kf).floor() as usize;
    let mut sup = 0.0f64;
    for j in 0..=m {
        let level = trace.lap_numbers[j] as f64 / kf;
        let t0 = j as f64 / kf;
        let t1 = ((j + 1) as f64 / kf).min(horizon);
        sup = sup.max((level - t0 * mu_y).abs()).max((level - t1 * mu_y).abs());
    }
    sup
}

/// Return times of consecutive excursions along independent induced orbits
/// of `chain_length` excursions each, under `mu_Y`-like sampling. Returns the
/// samples and the number of truncated searches.
pub fn sample_return_times(
    spec: &MapSpec<f64>,
    total: usize,
    chain_length: usize,
    sampling: &Sampling,
    seed: u64,
) -> Result<(Vec<u64>, u64)> {
    let chain_length = chain_length.max(1);
    let mut out = Vec::with_capacity(total);
    let mut truncated = 0u64;
    let mut task = 0u64;
    let mut remaining = total;
    while remaining > 0 {
        let mut rng = task_rng(seed, task);
        task += 1;
        let start = induced_start(
            spec,
            &sampling.density,
            sampling.burn_in,
            sampling.return_cap,
            &mut rng,
        );
        let mut y = match start {
            Ok(st) => st.y,
            Err(Error::Truncated { .. }) => {
                truncated += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        for _ in 0..chain_length.min(remaining) {
            remaining -= 1;
            match return_time(spec, y, sampling.return_cap) {
                Ok(r) => {
                    out.push(r);
                    for _ in 0..r {
                        y = spec.step(y);
                    }
                }
                Err(Error::Truncated { .. }) => {
                    truncated += 1;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Statistical("no complete excursions sampled".into()));
    }
    Ok((out, truncated))
}

/// Strong law for lap numbers: median sup error along `k_grid` and Kac's
/// formula `mu(Y) * mean(r) = 1`. `mu_y` is the long-run occupation frequency
/// of `Y`.
pub fn lap_sllns(
    spec: &MapSpec<f64>,
    config: &LapConfig,
    mu_y: f64,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    check_grid("k_grid", &config.k_grid)?;
    if !(config.horizon > 0.0) || config.trials == 0 {
        return Err(Error::Validation("lap_sllns needs T > 0 and trials >= 1".into()));
    }
    if !(mu_y > 0.0 && mu_y <= 1.0) {
        return Err(Error::Validation(format!("mu(Y) estimate {mu_y} outside (0,1]")));
    }
    let mut report = SuiteReport::new("lap_sllns", metadata(config, seed));
    let k_max = *config.k_grid.last().expect("checked grid");
    let horizon_steps = ((config.horizon * k_max as f64).floor() as usize).max(1);
    let mut errors: Vec<Vec<f64>> = vec![Vec::with_capacity(config.trials); config.k_grid.len()];
    let trial_seed = derive_seed(seed, "lap-sllns");
    for t in 0..config.trials {
        let mut rng = task_rng(trial_seed, t as u64);
        let mut x = sample_initial(&config.sampling.density, &mut rng)?;
        for _ in 0..config.sampling.burn_in {
            x = spec.step(x);
        }
        let trace = lap_numbers(spec, x, horizon_steps)?;
        for (g, &k) in config.k_grid.iter().enumerate() {
            errors[g].push(lap_sup_error(&trace, k, config.horizon, mu_y));
        }
    }
    let medians: Vec<f64> = errors.iter().map(|e| median(e)).collect();
    let mut table = Table::new("sup_error", &["k", "median_sup_error"]);
    for (g, &k) in config.k_grid.iter().enumerate() {
        table.push(vec![k as f64, medians[g]]);
    }
    report.tables.push(table);
    report.check(
        "median_sup_error_change",
        medians[medians.len() - 1] - medians[0],
        Comparison::Lt,
        -config.thresholds.min_decrease,
    );
    report.check(
        "median_sup_error_max_step",
        max_step(&medians),
        Comparison::Lt,
        -config.thresholds.min_decrease,
    );
    report.info("mu_y", mu_y);

    if config.kac_excursions > 0 {
        let (returns, truncated) = sample_return_times(
            spec,
            config.kac_excursions,
            config.kac_chain_length,
            &config.sampling,
            derive_seed(seed, "lap-kac"),
        )?;
        let count = returns.len();
        let mean_r = returns.iter().map(|&r| r as f64).sum::<f64>() / count as f64;
        report.info("mean_return_time", mean_r);
        report.info("kac_excursions", count as f64);
        report.info("truncated_excursions", truncated as f64);
        report.check(
            "kac_product_deviation",
            (mu_y * mean_r - 1.0).abs(),
            Comparison::Lt,
            config.thresholds.kac_tolerance,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_orbit_has_no_error_with_full_occupation() {
        let spec = MapSpec::lsv(0.6).unwrap();
        let trace = lap_numbers(&spec, 1.0, 1000).unwrap();
        // Only the discretisation of t remains, which vanishes as k grows.
        assert!(lap_sup_error(&trace, 1000, 1.0, 1.0) <= 1e-3 + 1e-15);
    }
}
