use serde::{Deserialize, Serialize};

use super::common::{
    check_grid, metadata, normalizer, origin_value, threshold_index, Sampling,
};
use super::report::{Comparison, SuiteReport, Table};
use super::stats::median;
use crate::error::{Error, Result};
use crate::inducing::{induced_start, InducedChain};
use crate::maps::{MapSpec, ObservableSpec};
use crate::seeding::{derive_seed, task_rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MonotonicityThresholds {
    /// Allowed number of excursions with `Phi*` above `(k+1)|phi|_inf`.
    pub max_violations: f64,
    /// The median curve must drop by more than this from first to last `n`.
    pub min_decrease: f64,
}

impl Default for MonotonicityThresholds {
    fn default() -> Self {
        Self {
            max_violations: 0.0,
            min_decrease: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MonotonicityConfig {
    pub n_grid: Vec<usize>,
    /// Independent induced orbits for the scaled maximum curve.
    pub trials: usize,
    /// Additional excursions checked against the pointwise bound.
    pub bound_excursions: usize,
    pub sampling: Sampling,
    pub thresholds: MonotonicityThresholds,
}

impl Default for MonotonicityConfig {
    fn default() -> Self {
        Self {
            n_grid: vec![100, 1000, 10_000],
            trials: 1000,
            bound_excursions: 100_000,
            sampling: Sampling::default(),
            thresholds: MonotonicityThresholds::default(),
        }
    }
}

/// Weak monotonicity of the excursions:
///
/// * the median of `B(n)^{-1} max_{j<=n} Phi* o F^j` along `n_grid`,
/// * `Phi* <= (k+1)|phi|_inf` on every excursion, where `phi` keeps the sign
///   of `phi(0)` on `[0, eps]` and `k` is the first index with `x_k < eps`,
/// * the smallest `eta` with `Phi* <= eta B(r)` on the sample.
pub fn monotonicity_suite(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    config: &MonotonicityConfig,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    obs.validate()?;
    origin_value(obs)?;
    check_grid("n_grid", &config.n_grid)?;
    if config.trials == 0 {
        return Err(Error::Validation("monotonicity needs trials >= 1".into()));
    }
    let eps = obs
        .sign_threshold()
        .expect("nonzero phi(0) has a sign threshold");
    let k = threshold_index(spec, eps)?;
    let sup = obs.sup_abs();
    let bound = (k as f64 + 1.0) * sup;

    let mut report = SuiteReport::new("monotonicity", metadata(config, seed));
    let s = &config.sampling;
    let n_max = *config.n_grid.last().expect("checked grid");
    let mut curves: Vec<Vec<f64>> = vec![Vec::new(); config.n_grid.len()];
    let mut max_star = 0.0f64;
    let mut eta = 0.0f64;
    let mut violations = 0u64;
    let mut excursions = 0u64;
    let mut truncated = 0u64;
    let mut observe = |star: f64, r: u64| {
        max_star = max_star.max(star);
        eta = eta.max(star / (r as f64).powf(spec.gamma));
        violations += u64::from(star > bound);
        excursions += 1;
    };

    let curve_seed = derive_seed(seed, "monotonicity-curve");
    'trials: for t in 0..config.trials {
        let mut rng = task_rng(curve_seed, t as u64);
        let start = match induced_start(spec, &s.density, s.burn_in, s.return_cap, &mut rng) {
            Ok(st) => st,
            Err(Error::Truncated { .. }) => {
                truncated += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut chain = InducedChain::new(spec, obs, start.y, s.return_cap);
        let mut running = 0.0f64;
        let mut g = 0;
        for j in 0..=n_max {
            let e = match chain.next_excursion() {
                Ok(e) => e,
                Err(Error::Truncated { .. }) => {
                    truncated += 1;
                    continue 'trials;
                }
                Err(e) => return Err(e),
            };
            observe(e.phi_star, e.return_time);
            running = running.max(e.phi_star);
            while g < config.n_grid.len() && config.n_grid[g] == j {
                curves[g].push(running / normalizer(spec, j));
                g += 1;
            }
        }
    }

    let bound_seed = derive_seed(seed, "monotonicity-bound");
    const CHAIN: usize = 10_000;
    let mut remaining = config.bound_excursions;
    let mut task = 0u64;
    while remaining > 0 {
        let mut rng = task_rng(bound_seed, task);
        task += 1;
        let start = match induced_start(spec, &s.density, s.burn_in, s.return_cap, &mut rng) {
            Ok(st) => st,
            Err(Error::Truncated { .. }) => {
                truncated += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut chain = InducedChain::new(spec, obs, start.y, s.return_cap);
        for _ in 0..CHAIN.min(remaining) {
            remaining -= 1;
            match chain.next_excursion() {
                Ok(e) => observe(e.phi_star, e.return_time),
                Err(Error::Truncated { .. }) => {
                    truncated += 1;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }

    let mut table = Table::new(
        "scaled_max_phi_star",
        &["n", "median", "samples"],
    );
    let medians: Vec<f64> = curves.iter().map(|c| median(c)).collect();
    for (g, &n) in config.n_grid.iter().enumerate() {
        table.push(vec![n as f64, medians[g], curves[g].len() as f64]);
    }
    report.tables.push(table);

    report.check(
        "median_scaled_max_phi_star_change",
        medians[medians.len() - 1] - medians[0],
        Comparison::Lt,
        -config.thresholds.min_decrease,
    );
    report.check(
        "phi_star_bound_violations",
        violations as f64,
        Comparison::Le,
        config.thresholds.max_violations,
    );
    report.info("max_phi_star", max_star);
    report.info("phi_star_bound", bound);
    report.info("sign_threshold_eps", eps);
    report.info("sign_threshold_index_k", k as f64);
    report.info("phi_sup", sup);
    report.info("implied_eta", eta);
    report.info("excursions_checked", excursions as f64);
    report.info("truncated_excursions", truncated as f64);
    Ok(report)
}
