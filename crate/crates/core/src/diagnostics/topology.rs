use serde::{Deserialize, Serialize};

use super::common::{check_count, check_grid, metadata, normalizer};
use super::report::{Comparison, SuiteReport, Table};
use super::stats::{median, two_sample_ks, EmpiricalMeasure};
use crate::cadlag::StepPath;
use crate::error::Result;
use crate::maps::{sample_initial, DensitySpec, MapSpec, ObservableSpec};
use crate::seeding::{derive_seed, task_rng};
use crate::stable::{sample_levy_path, LevyPathConfig, StableLaw};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TopologyThresholds {
    pub max_violations: f64,
    /// Allowed relative drift of the Lévy max-jump median across the grid.
    pub levy_jump_drift: f64,
    pub min_decrease: f64,
}

impl Default for TopologyThresholds {
    fn default() -> Self {
        Self {
            max_violations: 0.0,
            levy_jump_drift: 0.2,
            min_decrease: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TopologyConfig {
    pub n_grid: Vec<usize>,
    pub samples: usize,
    pub horizon: f64,
    pub levy_paths: usize,
    pub levy_grid_step: f64,
    pub density: DensitySpec,
    pub burn_in: u64,
    pub thresholds: TopologyThresholds,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        Self {
            n_grid: vec![100, 1000, 10_000],
            samples: 2000,
            horizon: 1.0,
            levy_paths: 2000,
            levy_grid_step: 1e-3,
            density: DensitySpec::Uniform,
            burn_in: 1000,
            thresholds: TopologyThresholds::default(),
        }
    }
}

/// `W_n` on `[0, T]` for the orbit of `x`.
pub fn full_system_path(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    x0: f64,
    n: usize,
    horizon: f64,
) -> Result<StepPath<f64>> {
    let b = normalizer(spec, n);
    let m = (horizon * n as f64).floor() as usize;
    let mut times = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    let mut x = x0;
    let mut acc = 0.0;
    for j in 1..=m {
        acc += obs.eval(x);
        x = spec.step(x);
        times.push((j as f64 / n as f64).min(horizon));
        values.push(acc / b);
    }
    StepPath::new(horizon, 0.0, times, values)
}

/// Rounding allowance for `max_jump(W_n) B(n) <= |phi|_inf`: the path stores
/// rounded partial sums divided by `B(n)`, so each jump carries errors of a
/// few ulps of the running sum.
fn jump_slack(path: &StepPath<f64>, b: f64, sup: f64) -> f64 {
    let level = path.sup().abs().max(path.inf().abs()) * b;
    4.0 * f64::EPSILON * (level + sup)
}

/// Why the limit holds in M1 but not J1: every jump of `W_n` is at most
/// `|phi|_inf / B(n)`, while the Lévy limit has macroscopic jumps; the
/// M1-continuous supremum functional still converges.
pub fn topology_probe(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    config: &TopologyConfig,
    law: &StableLaw,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    obs.validate()?;
    law.validate()?;
    check_grid("n_grid", &config.n_grid)?;
    check_count("samples", config.samples, 2)?;
    check_count("levy_paths", config.levy_paths, 2)?;
    let levy = LevyPathConfig {
        horizon: config.horizon,
        grid_step: config.levy_grid_step,
    };
    levy.cells()?;
    let sup_phi = obs.sup_abs();

    let mut report = SuiteReport::new("topology_probe", metadata(config, seed));
    let mut table = Table::new(
        "topology",
        &["n", "max_jump_ratio", "levy_max_jump_median", "sup_ks"],
    );
    let mut violations = 0u64;
    let mut worst_ratio = 0.0f64;
    let (mut levy_jumps, mut sup_ks) = (Vec::new(), Vec::new());
    for &n in &config.n_grid {
        let b = normalizer(spec, n);
        let path_seed = derive_seed(seed, &format!("topology-paths-{n}"));
        let mut sups = Vec::with_capacity(config.samples);
        let mut ratio_n = 0.0f64;
        for i in 0..config.samples {
            let mut rng = task_rng(path_seed, i as u64);
            let mut x = sample_initial(&config.density, &mut rng)?;
            for _ in 0..config.burn_in {
                x = spec.step(x);
            }
            let w = full_system_path(spec, obs, x, n, config.horizon)?;
            let scaled = w.max_jump() * b;
            if scaled > sup_phi + jump_slack(&w, b, sup_phi) {
                violations += 1;
            }
            ratio_n = ratio_n.max(scaled / sup_phi);
            sups.push(w.sup());
        }
        worst_ratio = worst_ratio.max(ratio_n);

        let levy_seed = derive_seed(seed, &format!("topology-levy-{n}"));
        let mut jumps = Vec::with_capacity(config.levy_paths);
        let mut levy_sups = Vec::with_capacity(config.levy_paths);
        for i in 0..config.levy_paths {
            let mut rng = task_rng(levy_seed, i as u64);
            let path = sample_levy_path(law, &levy, &mut rng)?;
            jumps.push(path.max_jump());
            levy_sups.push(path.sup());
        }
        let jump_median = median(&jumps);
        let ks = two_sample_ks(
            &EmpiricalMeasure::new(sups)?,
            &EmpiricalMeasure::new(levy_sups)?,
        )?;
        levy_jumps.push(jump_median);
        sup_ks.push(ks);
        table.push(vec![n as f64, ratio_n, jump_median, ks]);
    }
    report.tables.push(table);

    let last = config.n_grid.len() - 1;
    let th = &config.thresholds;
    report.check("jump_bound_violations", violations as f64, Comparison::Le, th.max_violations);
    report.info("max_jump_ratio", worst_ratio);
    report.check(
        "levy_max_jump_median_drift",
        (levy_jumps[last] / levy_jumps[0] - 1.0).abs(),
        Comparison::Lt,
        th.levy_jump_drift,
    );
    report.check("sup_ks_change", sup_ks[last] - sup_ks[0], Comparison::Lt, -th.min_decrease);
    report.info("phi_sup", sup_phi);
    Ok(report)
}
