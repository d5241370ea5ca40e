use serde::{Deserialize, Serialize};

use super::common::{check_count, check_grid, metadata, normalizer, origin_value};
use super::report::{Comparison, SuiteReport, Table};
use super::stats::{ks_distance_continuous, median, two_sample_ks, EmpiricalMeasure};
use crate::error::{Error, Result};
use crate::inducing::{in_y, induced_start, split_observable, DEFAULT_RETURN_CAP};
use crate::maps::{sample_initial, DensitySpec, MapSpec, ObservableSpec};
use crate::seeding::{derive_seed, task_rng};
use crate::stable::{StableLaw, DEFAULT_CDF_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WipThresholds {
    /// Induced-system KS at the largest `n`.
    pub final_induced_ks: f64,
    /// Two-sample KS between the two initial densities at the largest `n`.
    pub strong_ks: f64,
    pub min_decrease: f64,
}

impl Default for WipThresholds {
    fn default() -> Self {
        Self {
            final_induced_ks: 0.08,
            strong_ks: 0.05,
            min_decrease: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WipConfig {
    pub n_grid: Vec<usize>,
    pub samples: usize,
    pub density_a: DensitySpec,
    pub density_b: DensitySpec,
    pub burn_in: u64,
    pub return_cap: u64,
    pub cdf_tol: f64,
    pub thresholds: WipThresholds,
}

impl Default for WipConfig {
    fn default() -> Self {
        Self {
            n_grid: vec![100, 1000, 10_000],
            samples: 4000,
            density_a: DensitySpec::Uniform,
            density_b: DensitySpec::Polynomial {
                coefficients: vec![0.0, 2.0],
            },
            burn_in: 1000,
            return_cap: DEFAULT_RETURN_CAP,
            cdf_tol: DEFAULT_CDF_TOL,
            thresholds: WipThresholds::default(),
        }
    }
}

/// Limit laws for the scaled sums: the full-system law from the closed-form
/// constant, and the induced one, whose scale constant is larger by the mean
/// return time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitLaws {
    pub induced: StableLaw,
    pub full: StableLaw,
    pub mean_return: f64,
}

pub fn limit_laws(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    mu_y: f64,
    h_half: f64,
) -> Result<LimitLaws> {
    if !(mu_y > 0.0 && mu_y < 1.0) {
        return Err(Error::Validation(format!("mu(Y) estimate {mu_y} outside (0,1)")));
    }
    let mean_return = mu_y.recip();
    let closed_form = StableLaw::from_lsv_params(spec.gamma, origin_value(obs)?, h_half)?;
    let induced = closed_form.induced_from_full(mean_return)?;
    let full = induced.rescale_full_system(mean_return)?;
    Ok(LimitLaws {
        induced,
        full,
        mean_return,
    })
}

/// `(Phi_n / B, max_{j<=n} |Phi~_j| / B)` along `n` excursions from `y`.
fn induced_statistics(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    tilde: &ObservableSpec,
    y: f64,
    n: usize,
    cap: u64,
) -> Result<(f64, f64)> {
    let b = normalizer(spec, n);
    let mut x = y;
    let (mut phi, mut phi_t, mut max_t) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let mut r = 0u64;
        loop {
            if r >= cap {
                return Err(Error::Truncated { cap, partial: r });
            }
            phi += obs.eval(x);
            phi_t += tilde.eval(x);
            x = spec.step(x);
            r += 1;
            if in_y(x) {
                break;
            }
        }
        max_t = max_t.max(phi_t.abs());
    }
    Ok((phi / b, max_t / b))
}

/// `phi_n(x) / B(n)` for `x` drawn from `density` and burnt in.
fn full_statistic(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    density: &DensitySpec,
    burn_in: u64,
    n: usize,
    rng: &mut crate::seeding::TaskRng,
) -> Result<f64> {
    let mut x = sample_initial(density, rng)?;
    for _ in 0..burn_in {
        x = spec.step(x);
    }
    let mut acc = 0.0;
    for _ in 0..n {
        acc += obs.eval(x);
        x = spec.step(x);
    }
    Ok(acc / normalizer(spec, n))
}

/// Marginal tests at time 1:
///
/// * (a) `P_n(1)` against the induced limit law,
/// * (b) `W_n(1)` against the full-system law,
/// * (c) `W_n(1)` from two initial densities against each other,
/// * (d) the scaled maximum of the induced sums of `phi~ = phi - phi0`.
pub fn wip_marginal_suite(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    config: &WipConfig,
    mu_y: f64,
    h_half: f64,
    seed: u64,
) -> Result<SuiteReport> {
    spec.validate()?;
    obs.validate()?;
    check_grid("n_grid", &config.n_grid)?;
    check_count("samples", config.samples, 2)?;
    config.density_a.validate()?;
    config.density_b.validate()?;
    let laws = limit_laws(spec, obs, mu_y, h_half)?;
    let (_, tilde) = split_observable(obs, mu_y)?;

    let mut report = SuiteReport::new("wip_marginal", metadata(config, seed));
    let mut table = Table::new(
        "marginals",
        &["n", "ks_induced", "ks_full", "median_tilde_max", "induced_samples"],
    );
    let (mut ks_ind, mut ks_full, mut med_tilde) = (Vec::new(), Vec::new(), Vec::new());
    let mut truncated = 0u64;
    let mut strong = f64::NAN;
    let tol = config.cdf_tol;
    let n_last = config.n_grid.len() - 1;
    for (g, &n) in config.n_grid.iter().enumerate() {
        let induced_seed = derive_seed(seed, &format!("wip-induced-{n}"));
        let full_seed = derive_seed(seed, &format!("wip-full-{n}"));
        let mut p_values = Vec::with_capacity(config.samples);
        let mut tilde_values = Vec::with_capacity(config.samples);
        let mut w_values = Vec::with_capacity(config.samples);
        for i in 0..config.samples {
            let mut rng = task_rng(induced_seed, i as u64);
            let stats = induced_start(spec, &config.density_a, config.burn_in, config.return_cap, &mut rng)
                .and_then(|st| induced_statistics(spec, obs, &tilde, st.y, n, config.return_cap));
            match stats {
                Ok((p, t)) => {
                    p_values.push(p);
                    tilde_values.push(t);
                }
                Err(Error::Truncated { .. }) => truncated += 1,
                Err(e) => return Err(e),
            }
            let mut rng = task_rng(full_seed, i as u64);
            w_values.push(full_statistic(spec, obs, &config.density_a, config.burn_in, n, &mut rng)?);
        }
        check_count("complete induced samples", p_values.len(), 2)?;
        let p = EmpiricalMeasure::new(p_values)?;
        let w = EmpiricalMeasure::new(w_values)?;
        ks_ind.push(ks_distance_continuous(&p, |x| laws.induced.cdf(x, tol))?);
        ks_full.push(ks_distance_continuous(&w, |x| laws.full.cdf(x, tol))?);
        med_tilde.push(median(&tilde_values));
        table.push(vec![n as f64, ks_ind[g], ks_full[g], med_tilde[g], p.len() as f64]);

        if g == n_last {
            let mut other = Vec::with_capacity(config.samples);
            for i in 0..config.samples {
                // Same streams as ensemble (a): only the initial law differs.
                let mut rng = task_rng(full_seed, i as u64);
                other.push(full_statistic(spec, obs, &config.density_b, config.burn_in, n, &mut rng)?);
            }
            strong = two_sample_ks(&w, &EmpiricalMeasure::new(other)?)?;
        }
    }
    report.tables.push(table);

    let th = &config.thresholds;
    report.check("ks_induced_change", ks_ind[n_last] - ks_ind[0], Comparison::Lt, -th.min_decrease);
    report.check("ks_induced_final", ks_ind[n_last], Comparison::Lt, th.final_induced_ks);
    report.check("ks_full_change", ks_full[n_last] - ks_full[0], Comparison::Lt, -th.min_decrease);
    report.check("strong_convergence_ks", strong, Comparison::Lt, th.strong_ks);
    report.check(
        "holder_part_median_change",
        med_tilde[n_last] - med_tilde[0],
        Comparison::Lt,
        -th.min_decrease,
    );
    report.info("ks_full_final", ks_full[n_last]);
    report.info("induced_law_c", laws.induced.c);
    report.info("full_law_c", laws.full.c);
    report.info("mean_return", laws.mean_return);
    report.info("truncated_excursions", truncated as f64);
    Ok(report)
}
