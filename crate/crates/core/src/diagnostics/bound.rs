use serde::{Deserialize, Serialize};

use super::common::{check_grid, metadata, normalizer, Sampling};
use super::report::{Comparison, SuiteReport, Table};
use super::stats::median;
use crate::cadlag::m1_distance;
use crate::error::{Error, Result};
use crate::inducing::{induced_start, scaled_paths, InducedChain};
use crate::maps::{MapSpec, ObservableSpec};
use crate::seeding::{derive_seed, task_rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExcursionBoundThresholds {
    /// Allowed excess of the certified M1 lower bound over the right side.
    pub slack: f64,
    pub max_violations: f64,
    pub min_decrease: f64,
}

impl Default for ExcursionBoundThresholds {
    fn default() -> Self {
        Self {
            slack: 1e-6,
            max_violations: 0.0,
            min_decrease: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExcursionBoundConfig {
    pub n: usize,
    pub horizon: f64,
    pub trials: usize,
    /// Bisection tolerance for the M1 bracket.
    pub metric_tol: f64,
    pub trend_grid: Vec<usize>,
    pub trend_trials: usize,
    pub sampling: Sampling,
    pub thresholds: ExcursionBoundThresholds,
}

impl Default for ExcursionBoundConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            horizon: 1.0,
            trials: 100,
            metric_tol: 1e-6,
            trend_grid: vec![100, 1000, 10_000],
            trend_trials: 200,
            sampling: Sampling::default(),
            thresholds: ExcursionBoundThresholds::default(),
        }
    }
}

/// Right side of the excursion bound from a chain of `[Tn]+2` excursions.
fn chain_bound(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    y: f64,
    n: usize,
    horizon: f64,
    cap: u64,
) -> Result<f64> {
    let b = normalizer(spec, n);
    let m = (horizon * n as f64).floor() as usize;
    let mut chain = InducedChain::new(spec, obs, y, cap);
    let mut rhs = 0.0f64;
    for _ in 0..m + 2 {
        let e = chain.next_excursion()?;
        rhs = rhs.max(e.return_time as f64 / n as f64 + 2.0 * e.phi_star / b);
    }
    Ok(rhs)
}

/// Checks `d_M1(W_n, U_n) <= max_{j <= [Tn]+1} (r/n + 2 Phi*/B(n)) o F^j` with
/// a certified lower bound for the distance, and the decay of the right side.
pub fn excursion_bound_check(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    config: &ExcursionBoundConfig,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    obs.validate()?;
    if config.n < 10 {
        return Err(Error::Validation(format!(
            "excursion bound check needs n >= 10, got {}",
            config.n
        )));
    }
    check_grid("trend_grid", &config.trend_grid)?;
    let s = &config.sampling;
    let mut report = SuiteReport::new("excursion_bound", metadata(config, seed));

    let mut trials = Table::new(
        "trials",
        &["trial", "m1_lower", "m1_upper", "rhs", "terminal_gap", "margin"],
    );
    let mut violations = 0u64;
    let mut corrected_violations = 0u64;
    let mut truncated = 0u64;
    let mut worst = f64::NEG_INFINITY;
    let trial_seed = derive_seed(seed, "excursion-bound-trials");
    for t in 0..config.trials {
        let mut rng = task_rng(trial_seed, t as u64);
        let bundle = induced_start(spec, &s.density, s.burn_in, s.return_cap, &mut rng)
            .and_then(|st| scaled_paths(spec, obs, st.y, config.n, config.horizon, s.return_cap));
        let bundle = match bundle {
            Ok(b) => b,
            Err(Error::Truncated { .. }) => {
                truncated += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let m1 = m1_distance(&bundle.w, &bundle.u, config.metric_tol)?;
        let rhs = bundle.excursion_bound();
        let margin = m1.lower - rhs;
        worst = worst.max(margin);
        if margin > config.thresholds.slack {
            violations += 1;
        }
        // An excursion still running at T leaves W_n and U_n apart at the
        // right end point, which no time change can repair.
        let gap = bundle.terminal_gap();
        if margin - gap > config.thresholds.slack {
            corrected_violations += 1;
        }
        trials.push(vec![t as f64, m1.lower, m1.upper, rhs, gap, margin]);
    }
    report.tables.push(trials);

    let mut trend = Table::new("rhs_trend", &["n", "median_rhs", "samples"]);
    let mut medians = Vec::new();
    let trend_seed = derive_seed(seed, "excursion-bound-trend");
    for (g, &n) in config.trend_grid.iter().enumerate() {
        let mut values = Vec::with_capacity(config.trend_trials);
        for t in 0..config.trend_trials {
            let task = (g * config.trend_trials + t) as u64;
            let mut rng = task_rng(trend_seed, task);
            let rhs = induced_start(spec, &s.density, s.burn_in, s.return_cap, &mut rng)
                .and_then(|st| chain_bound(spec, obs, st.y, n, config.horizon, s.return_cap));
            match rhs {
                Ok(v) => values.push(v),
                Err(Error::Truncated { .. }) => truncated += 1,
                Err(e) => return Err(e),
            }
        }
        let m = median(&values);
        medians.push(m);
        trend.push(vec![n as f64, m, values.len() as f64]);
    }
    report.tables.push(trend);

    report.check(
        "bound_violations",
        violations as f64,
        Comparison::Le,
        config.thresholds.max_violations,
    );
    report.check(
        "bound_with_terminal_gap_violations",
        corrected_violations as f64,
        Comparison::Le,
        config.thresholds.max_violations,
    );
    report.info("max_margin_lower_minus_rhs", worst);
    report.check(
        "median_rhs_change",
        medians[medians.len() - 1] - medians[0],
        Comparison::Lt,
        -config.thresholds.min_decrease,
    );
    report.info("truncated_excursions", truncated as f64);
    Ok(report)
}
