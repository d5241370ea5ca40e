use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inducing::DEFAULT_RETURN_CAP;
use crate::maps::{left_preimage, DensitySpec, MapSpec, ObservableSpec};

/// How starting points are drawn for an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Sampling {
    pub density: DensitySpec,
    pub burn_in: u64,
    pub return_cap: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            density: DensitySpec::Uniform,
            burn_in: 1000,
            return_cap: DEFAULT_RETURN_CAP,
        }
    }
}

/// `B(n) = n^{1/alpha} = n^gamma`.
pub fn normalizer(spec: &MapSpec<f64>, n: usize) -> f64 {
    (n as f64).powf(spec.gamma)
}

pub(crate) fn origin_value(obs: &ObservableSpec) -> Result<f64> {
    let v = obs.centered_at_zero();
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Hypothesis(format!(
            "the observable must not vanish at the neutral fixed point (phi(0) = {v})"
        )));
    }
    Ok(v)
}

/// First `k` with `x_k < eps` along the left preimages of 1/2.
pub fn threshold_index(spec: &MapSpec<f64>, eps: f64) -> Result<usize> {
    const LIMIT: usize = 10_000_000;
    if !(eps > 0.0) {
        return Err(Error::Validation(format!("threshold must be positive, got {eps}")));
    }
    let mut x = 0.5;
    for k in 1..=LIMIT {
        if x < eps {
            return Ok(k);
        }
        x = left_preimage(spec, x)?;
    }
    Err(Error::Numeric(format!(
        "threshold {eps} not reached within {LIMIT} preimages"
    )))
}

pub(crate) fn check_grid(name: &str, grid: &[usize]) -> Result<()> {
    if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
        return Err(Error::Validation(format!(
            "{name} must hold at least two strictly increasing positive values"
        )));
    }
    Ok(())
}

pub(crate) fn check_count(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::Statistical(format!(
            "{name} = {value} is too small; need at least {min}"
        )));
    }
    Ok(())
}

pub(crate) fn metadata<C: Serialize>(config: &C, seed: u64) -> serde_json::Value {
    serde_json::json!({
        "config": config,
        "seed": seed,
    })
}

/// Largest consecutive change along a curve; negative iff strictly decreasing.
pub(crate) fn max_step(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}
