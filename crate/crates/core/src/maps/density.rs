use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lsv::MapSpec;
use crate::error::{Error, Result};

/// Initial law on `[0,1]`, absolutely continuous w.r.t. Lebesgue measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Uniform,
    /// Density `sum_k coefficients[k] x^k`.
    Polynomial { coefficients: Vec<f64> },
    /// Equal-width bins on `[0,1]` carrying the given masses.
    Histogram { masses: Vec<f64> },
}

impl DensitySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DensitySpec::Uniform => Ok(()),
            DensitySpec::Polynomial { coefficients } => {
                if coefficients.is_empty() || coefficients.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Validation(
                        "polynomial density needs finite coefficients".into(),
                    ));
                }
                let total: f64 = coefficients
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c / (k as f64 + 1.0))
                    .sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::Validation(format!(
                        "polynomial density integrates to {total}, not 1"
                    )));
                }
                for i in 0..=4096 {
                    let x = i as f64 / 4096.0;
                    if self.density(x) < -1e-12 {
                        return Err(Error::Validation(format!(
                            "polynomial density negative at {x}"
                        )));
                    }
                }
                Ok(())
            }
            DensitySpec::Histogram { masses } => {
                if masses.is_empty() || masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
                    return Err(Error::Validation(
                        "histogram masses must be finite and nonnegative".into(),
                    ));
                }
                let total: f64 = masses.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::Validation(format!(
                        "histogram masses sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        match self {
            DensitySpec::Uniform => 1.0,
            DensitySpec::Polynomial { coefficients } => {
                coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
            DensitySpec::Histogram { masses } => {
                let bins = masses.len();
                let i = ((x * bins as f64) as usize).min(bins - 1);
                masses[i] * bins as f64
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        match self {
            DensitySpec::Uniform => x,
            DensitySpec::Polynomial { coefficients } => coefficients
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (k, c)| acc * x + c / (k as f64 + 1.0))
                * x,
            DensitySpec::Histogram { masses } => {
                let bins = masses.len() as f64;
                let pos = x * bins;
                let full = (pos as usize).min(masses.len());
                let mut acc: f64 = masses[..full].iter().sum();
                if full < masses.len() {
                    acc += masses[full] * (pos - full as f64);
                }
                acc
            }
        }
    }

    /// Inverse-CDF transform of a uniform variate `u` in `[0,1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        match self {
            DensitySpec::Uniform => u,
            DensitySpec::Polynomial { .. } => {
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for _ in 0..64 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < u {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
            DensitySpec::Histogram { masses } => {
                let bins = masses.len() as f64;
                let mut acc = 0.0;
                for (i, &m) in masses.iter().enumerate() {
                    if m > 0.0 && acc + m > u {
                        return ((i as f64) + (u - acc) / m) / bins;
                    }
                    acc += m;
                }
                1.0
            }
        }
    }
}

/// Draws one starting point distributed according to `density`.
pub fn sample_initial<R: Rng + ?Sized>(density: &DensitySpec, rng: &mut R) -> Result<f64> {
    density.validate()?;
    Ok(density.quantile(rng.random::<f64>()))
}

/// Histogram estimate of the invariant density from one long orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub sample_count: u64,
    /// Density at 1/2 from a window of one bin width centred at 1/2.
    pub h_half: f64,
    /// Set when the orbit is short relative to the number of bins.
    pub low_quality: bool,
}

impl DensityEstimate {
    /// `mass / width` of the bin containing `x`.
    pub fn at(&self, x: f64) -> f64 {
        let bins = self.masses.len();
        let i = match self.bin_edges.binary_search_by(|e| e.total_cmp(&x)) {
            Ok(i) => i.min(bins - 1),
            Err(i) => i.saturating_sub(1).min(bins - 1),
        };
        self.masses[i] / (self.bin_edges[i + 1] - self.bin_edges[i])
    }

    /// CSV with columns `bin_left,bin_right,mass`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("bin_left,bin_right,mass\n");
        for (i, m) in self.masses.iter().enumerate() {
            let _ = writeln!(s, "{},{},{}", self.bin_edges[i], self.bin_edges[i + 1], m);
        }
        s
    }
}

/// Orbits shorter than this many points per bin raise the quality flag.
const MIN_POINTS_PER_BIN: u64 = 100;

pub fn estimate_invariant_density<R: Rng + ?Sized>(
    spec: &MapSpec<f64>,
    n: u64,
    bins: usize,
    burn_in: u64,
    rng: &mut R,
) -> Result<DensityEstimate> {
    spec.validate()?;
    if bins == 0 || n == 0 {
        return Err(Error::Validation("need n >= 1 and bins >= 1".into()));
    }
    let mut x = rng.random::<f64>();
    for _ in 0..burn_in {
        x = spec.step(x);
    }
    let width = 1.0 / bins as f64;
    let (win_lo, win_hi) = (0.5 - 0.5 * width, 0.5 + 0.5 * width);
    let mut counts = vec![0u64; bins];
    let mut window = 0u64;
    let scale = bins as f64;
    for _ in 0..n {
        let i = ((x * scale) as usize).min(bins - 1);
        counts[i] += 1;
        if x >= win_lo && x < win_hi {
            window += 1;
        }
        x = spec.step(x);
    }
    let total = n as f64;
    let mut masses: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    // Absorb the last few ulps of normalisation error into the largest bin.
    let sum: f64 = masses.iter().sum();
    if let Some((imax, _)) = masses
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
    {
        masses[imax] += 1.0 - sum;
    }
    let bin_edges = (0..=bins).map(|i| i as f64 / scale).collect();
    Ok(DensityEstimate {
        bin_edges,
        masses,
        sample_count: n,
        h_half: window as f64 / (total * width),
        low_quality: n < MIN_POINTS_PER_BIN * bins as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::task_rng;

    #[test]
    fn sampling_is_deterministic() {
        let d = DensitySpec::Uniform;
        let a = sample_initial(&d, &mut task_rng(11, 0)).unwrap();
        let b = sample_initial(&d, &mut task_rng(11, 0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn linear_density_mean() {
        let d = DensitySpec::Polynomial {
            coefficients: vec![0.0, 2.0],
        };
        let mut rng = task_rng(3, 0);
        let n = 100_000;
        let mean: f64 = (0..n)
            .map(|_| sample_initial(&d, &mut rng).unwrap())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 2.0 / 3.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn histogram_quantile_inverts_cdf() {
        let d = DensitySpec::Histogram {
            masses: vec![0.1, 0.0, 0.6, 0.3],
        };
        d.validate().unwrap();
        for i in 1..100 {
            let u = i as f64 / 100.0;
            assert!((d.cdf(d.quantile(u)) - u).abs() < 1e-12);
        }
    }

    #[test]
    fn malformed_densities_rejected() {
        let bad = [
            DensitySpec::Polynomial {
                coefficients: vec![0.5],
            },
            DensitySpec::Polynomial {
                coefficients: vec![2.0, -2.0 + 1e-3, 0.0, 0.0],
            },
            DensitySpec::Polynomial {
                coefficients: vec![3.0, -4.0],
            },
            DensitySpec::Histogram {
                masses: vec![0.5, 0.6],
            },
            DensitySpec::Histogram {
                masses: vec![1.5, -0.5],
            },
        ];
        for d in &bad {
            assert!(
                sample_initial(d, &mut task_rng(0, 0)).is_err(),
                "{d:?} accepted"
            );
        }
    }

    #[test]
    fn density_estimate_normalised_and_flagged() {
        let spec = MapSpec::lsv(0.6).unwrap();
        let est = estimate_invariant_density(&spec, 10_000, 200, 100, &mut task_rng(5, 0)).unwrap();
        let total: f64 = est.masses.iter().sum();
        assert!((total - 1.0).abs() <= 1e-12);
        assert!(est.low_quality);
        assert_eq!(est.bin_edges.len(), 201);
        assert_eq!(est.bin_edges[0], 0.0);
        assert_eq!(est.bin_edges[200], 1.0);
        let csv = est.to_csv();
        assert!(csv.starts_with("bin_left,bin_right,mass\n"));
        assert_eq!(csv.lines().count(), 201);
    }
}
