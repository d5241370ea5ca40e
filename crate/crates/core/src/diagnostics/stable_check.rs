use serde::{Deserialize, Serialize};

use super::common::{check_count, metadata};
use super::report::{Comparison, SuiteReport};
use super::stats::{ks_distance_continuous, two_sample_ks, EmpiricalMeasure};
use crate::error::Result;
use crate::seeding::{derive_seed, task_rng};
use crate::stable::{sample_levy_path, LevyPathConfig, StableLaw, DEFAULT_CDF_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StableThresholds {
    pub sampler_cdf_ks: f64,
    pub cf_sup_error: f64,
    pub summation_ks: f64,
    /// Bound on `|mean| / sigma`.
    pub mean_offset: f64,
    pub levy_marginal_ks: f64,
    pub rescale_ks: f64,
}

impl Default for StableThresholds {
    fn default() -> Self {
        Self {
            sampler_cdf_ks: 0.01,
            cf_sup_error: 0.02,
            summation_ks: 0.03,
            mean_offset: 0.05,
            levy_marginal_ks: 0.03,
            rescale_ks: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StableCheckConfig {
    pub cdf_samples: usize,
    pub cdf_tol: f64,
    pub cf_samples: usize,
    /// Points of the uniform grid on `[-t_max, t_max]`.
    pub cf_grid_points: usize,
    pub cf_t_max: f64,
    pub sum_samples: usize,
    pub sum_terms: usize,
    pub mean_samples: usize,
    pub levy_paths: usize,
    pub levy_grid_step: f64,
    pub rescale_samples: usize,
    pub rescale_mean_return: f64,
    pub thresholds: StableThresholds,
}

impl Default for StableCheckConfig {
    fn default() -> Self {
        Self {
            cdf_samples: 100_000,
            cdf_tol: DEFAULT_CDF_TOL,
            cf_samples: 100_000,
            cf_grid_points: 41,
            cf_t_max: 2.0,
            sum_samples: 10_000,
            sum_terms: 100,
            mean_samples: 1_000_000,
            levy_paths: 10_000,
            levy_grid_step: 0.01,
            rescale_samples: 100_000,
            rescale_mean_return: 3.0,
            thresholds: StableThresholds::default(),
        }
    }
}

fn draw(law: &StableLaw, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = task_rng(seed, 0);
    (0..n).map(|_| law.sample(&mut rng)).collect()
}

/// Sampler, distribution function and characteristic function checked
/// against each other, plus stability under summation, the Lévy marginals
/// and the full-system rescaling.
pub fn stable_consistency_suite(
    law: &StableLaw,
    config: &StableCheckConfig,
    seed: u64,
) -> Result<SuiteReport> {
    law.validate()?;
    for (name, v) in [
        ("cdf_samples", config.cdf_samples),
        ("cf_samples", config.cf_samples),
        ("sum_samples", config.sum_samples),
        ("mean_samples", config.mean_samples),
        ("levy_paths", config.levy_paths),
        ("rescale_samples", config.rescale_samples),
        ("cf_grid_points", config.cf_grid_points),
    ] {
        check_count(name, v, 2)?;
    }
    let mut meta = metadata(config, seed);
    meta["law"] = serde_json::to_value(law).expect("law serialises");
    let mut report = SuiteReport::new("stable_consistency", meta);
    let th = &config.thresholds;
    let alpha = law.alpha;
    let sigma = law.sigma();

    let xs = EmpiricalMeasure::new(draw(law, config.cdf_samples, derive_seed(seed, "stable-cdf")))?;
    let ks = ks_distance_continuous(&xs, |x| law.cdf(x, config.cdf_tol))?;
    report.check("sampler_cdf_ks", ks, Comparison::Lt, th.sampler_cdf_ks);

    let ys = draw(law, config.cf_samples, derive_seed(seed, "stable-cf"));
    let mut cf_err = 0.0f64;
    for i in 0..config.cf_grid_points {
        let t = -config.cf_t_max
            + 2.0 * config.cf_t_max * i as f64 / (config.cf_grid_points - 1) as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for &y in &ys {
            let (s, c) = (t * y).sin_cos();
            re += c;
            im += s;
        }
        let n = ys.len() as f64;
        let exact = law.cf(t);
        cf_err = cf_err.max(((re / n - exact.re).powi(2) + (im / n - exact.im).powi(2)).sqrt());
    }
    report.check("cf_sup_error", cf_err, Comparison::Lt, th.cf_sup_error);

    let mut rng = task_rng(derive_seed(seed, "stable-sum"), 0);
    let scale = (config.sum_terms as f64).powf(1.0 / alpha);
    let sums: Vec<f64> = (0..config.sum_samples)
        .map(|_| (0..config.sum_terms).map(|_| law.sample(&mut rng)).sum::<f64>() / scale)
        .collect();
    let singles = draw(law, config.sum_samples, derive_seed(seed, "stable-sum-ref"));
    let ks = two_sample_ks(&EmpiricalMeasure::new(sums)?, &EmpiricalMeasure::new(singles.clone())?)?;
    report.check("summation_ks", ks, Comparison::Lt, th.summation_ks);

    let mut rng = task_rng(derive_seed(seed, "stable-mean"), 0);
    let mut mean = 0.0;
    for _ in 0..config.mean_samples {
        mean += law.sample(&mut rng);
    }
    mean /= config.mean_samples as f64;
    report.check("mean_offset_over_sigma", mean.abs() / sigma, Comparison::Lt, th.mean_offset);

    let levy = LevyPathConfig {
        horizon: 1.0,
        grid_step: config.levy_grid_step,
    };
    let levy_seed = derive_seed(seed, "stable-levy");
    let (mut at_one, mut at_half) = (Vec::new(), Vec::new());
    for i in 0..config.levy_paths {
        let mut rng = task_rng(levy_seed, i as u64);
        let path = sample_levy_path(law, &levy, &mut rng)?;
        at_one.push(path.eval(1.0));
        at_half.push(path.eval(0.5));
    }
    let direct = EmpiricalMeasure::new(singles)?;
    let ks_one = two_sample_ks(&EmpiricalMeasure::new(at_one)?, &direct)?;
    let half_scale = 0.5f64.powf(1.0 / alpha);
    let scaled = EmpiricalMeasure::new(direct.samples().iter().map(|g| half_scale * g).collect())?;
    let ks_half = two_sample_ks(&EmpiricalMeasure::new(at_half)?, &scaled)?;
    report.check("levy_marginal_ks_t1", ks_one, Comparison::Lt, th.levy_marginal_ks);
    report.check("levy_marginal_ks_t_half", ks_half, Comparison::Lt, th.levy_marginal_ks);

    let m = config.rescale_mean_return;
    let rescaled = law.rescale_full_system(m)?;
    let direct = draw(&rescaled, config.rescale_samples, derive_seed(seed, "stable-rescaled"));
    let factor = m.powf(-1.0 / alpha);
    let mut rng = task_rng(derive_seed(seed, "stable-rescale-ref"), 0);
    let via: Vec<f64> = (0..config.rescale_samples)
        .map(|_| factor * law.sample(&mut rng))
        .collect();
    let ks = two_sample_ks(&EmpiricalMeasure::new(direct)?, &EmpiricalMeasure::new(via)?)?;
    report.check("rescale_ks", ks, Comparison::Lt, th.rescale_ks);

    report.info("alpha", alpha);
    report.info("c", law.c);
    report.info("sigma", sigma);
    Ok(report)
}
