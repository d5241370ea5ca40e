//! Birkhoff sums and long-run orbit averages.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lsv::MapSpec;
use super::observable::ObservableSpec;
use crate::error::{Error, Result};
use crate::seeding::task_rng;

/// `phi_n(x0) = sum_{j<n} phi(f^j x0)` for the effective observable.
pub fn birkhoff_sum(spec: &MapSpec<f64>, obs: &ObservableSpec, x0: f64, n: usize) -> Result<f64> {
    let mut x = x0;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("point {x} outside [0,1]")));
    }
    let mut acc = 0.0;
    for _ in 0..n {
        acc += obs.eval(x);
        x = spec.step(x);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongRunConfig {
    /// Total number of orbit points, split evenly over the chunks.
    pub orbit_length: u64,
    /// Independent orbits, each started uniformly and burnt in.
    pub chunks: u64,
    pub burn_in: u64,
}

impl Default for LongRunConfig {
    fn default() -> Self {
        Self {
            orbit_length: 100_000_000,
            chunks: 16,
            burn_in: 10_000,
        }
    }
}

/// Long-run averages along calibration orbits, with the settings that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongRunAverages {
    /// Birkhoff average of the raw observable: the centering offset.
    pub mean_phi: f64,
    /// Fraction of time spent in `Y = [1/2, 1]`: the estimate of `mu(Y)`.
    pub occupation_y: f64,
    /// Invariant density at 1/2 from a centred window of width `h_window`.
    pub h_half: f64,
    pub h_window: f64,
    pub config: LongRunConfig,
    pub seed: u64,
}

/// Runs the calibration orbits. The observable is evaluated as given, so pass
/// the uncentered observable to obtain a centering offset.
pub fn long_run_averages(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    config: &LongRunConfig,
    h_window: f64,
    seed: u64,
) -> Result<LongRunAverages> {
    spec.validate()?;
    obs.validate()?;
    if config.chunks == 0 || config.orbit_length < config.chunks {
        return Err(Error::Validation(
            "calibration needs chunks >= 1 and orbit_length >= chunks".into(),
        ));
    }
    if !(h_window > 0.0 && h_window < 1.0) {
        return Err(Error::Validation("h_window must lie in (0,1)".into()));
    }
    let per_chunk = config.orbit_length / config.chunks;
    let (lo, hi) = (0.5 - 0.5 * h_window, 0.5 + 0.5 * h_window);
    let mut sum_phi = 0.0;
    let mut in_y = 0u64;
    let mut in_window = 0u64;
    for chunk in 0..config.chunks {
        let mut rng = task_rng(seed, chunk);
        let mut x: f64 = rng.random();
        for _ in 0..config.burn_in {
            x = spec.step(x);
        }
        // Per-chunk partial sums keep the accumulated rounding small.
        let mut chunk_sum = 0.0;
        for _ in 0..per_chunk {
            chunk_sum += obs.eval(x);
            in_y += u64::from(x >= 0.5);
            in_window += u64::from(x >= lo && x < hi);
            x = spec.step(x);
        }
        sum_phi += chunk_sum;
    }
    let total = (per_chunk * config.chunks) as f64;
    Ok(LongRunAverages {
        mean_phi: sum_phi / total,
        occupation_y: in_y as f64 / total,
        h_half: in_window as f64 / (total * h_window),
        h_window,
        config: *config,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn constant_and_fixed_point_sums() {
        let spec = MapSpec::lsv(0.6).unwrap();
        let one = ObservableSpec::constant(1.0);
        assert_eq!(birkhoff_sum(&spec, &one, 0.37, 7).unwrap(), 7.0);
        let id = ObservableSpec::affine(0.0, 1.0);
        for n in [0, 1, 10, 1000] {
            assert_eq!(birkhoff_sum(&spec, &id, 0.0, n).unwrap(), 0.0);
        }
        assert!(birkhoff_sum(&spec, &id, 1.5, 3).is_err());
    }

    #[test]
    fn birkhoff_sum_equals_orbit_fold() {
        let mut rng = task_rng(99, 0);
        for _ in 0..50 {
            let gamma = rng.random_range(0.05..0.95);
            let spec = MapSpec::lsv(gamma).unwrap();
            let obs = ObservableSpec::power(
                rng.random_range(-1.0..1.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(0.1..1.0),
            )
            .with_step(rng.random_range(-1.0..1.0), 0.2, 0.7)
            .with_centering(rng.random_range(-0.5..0.5));
            let x0 = rng.random::<f64>();
            let direct = birkhoff_sum(&spec, &obs, x0, 100).unwrap();
            let folded = spec
                .orbit(x0, 100)
                .unwrap()
                .fold(0.0, |acc, x| acc + obs.eval(x));
            assert!((direct - folded).abs() <= 1e-12 * (1.0 + folded.abs()));
        }
    }

    #[test]
    fn long_run_is_deterministic() {
        let spec = MapSpec::lsv(0.6).unwrap();
        let obs = ObservableSpec::affine(1.0, -2.0);
        let cfg = LongRunConfig {
            orbit_length: 200_000,
            chunks: 4,
            burn_in: 100,
        };
        let a = long_run_averages(&spec, &obs, &cfg, 0.01, 1).unwrap();
        let b = long_run_averages(&spec, &obs, &cfg, 0.01, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.occupation_y > 0.0 && a.occupation_y < 1.0);
    }
}
