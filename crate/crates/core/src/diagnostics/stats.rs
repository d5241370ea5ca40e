//! Empirical distributions, Kolmogorov-Smirnov distances, medians and the
//! log-log tail fit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniformly weighted sample, kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    samples: Vec<f64>,
}

impl EmpiricalMeasure {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::Validation("empirical measure got a NaN sample".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Right-continuous ECDF, `#{x_i <= x} / n`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.samples.len() as f64
    }

    /// Empirical quantile by the nearest-rank rule.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.samples.len();
        let k = ((q * n as f64).ceil() as usize).clamp(1, n);
        self.samples[k - 1]
    }

    pub fn median(&self) -> f64 {
        median_sorted(&self.samples)
    }

    fn require(&self, min: usize) -> Result<()> {
        if self.samples.len() < min {
            return Err(Error::Validation(format!(
                "need at least {min} samples, got {}",
                self.samples.len()
            )));
        }
        Ok(())
    }

    /// Runs `(value, count below, count at or below)` over distinct values.
    fn runs(&self) -> impl Iterator<Item = (f64, usize, usize)> + '_ {
        let s = &self.samples;
        let mut i = 0;
        std::iter::from_fn(move || {
            if i >= s.len() {
                return None;
            }
            let x = s[i];
            let mut j = i + 1;
            while j < s.len() && s[j] == x {
                j += 1;
            }
            let run = (x, i, j);
            i = j;
            Some(run)
        })
    }
}

fn median_sorted(s: &[f64]) -> f64 {
    let n = s.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Median of an unsorted slice (NaN for an empty one).
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    median_sorted(&v)
}

/// `sup_x |F_n(x) - F(x)|` for an arbitrary distribution function `F`.
///
/// At each sample point the ECDF value is compared with `F(x)` and the ECDF
/// left limit with `F` just below `x`, which also makes step-function `F`
/// exact.
pub fn ks_distance(samples: &EmpiricalMeasure, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    samples.require(2)?;
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (x, below, upto) in samples.runs() {
        d = d.max((upto as f64 / n - cdf(x)).abs());
        d = d.max((below as f64 / n - cdf(x.next_down())).abs());
    }
    Ok(d)
}

/// KS distance against a continuous distribution function that may fail to
/// evaluate, such as a numerically inverted one.
pub fn ks_distance_continuous(
    samples: &EmpiricalMeasure,
    mut cdf: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    samples.require(2)?;
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (x, below, upto) in samples.runs() {
        let f = cdf(x)?;
        d = d.max((upto as f64 / n - f).abs()).max((below as f64 / n - f).abs());
    }
    Ok(d)
}

/// `sup_x |F_n(x) - G_m(x)|` between two samples.
pub fn two_sample_ks(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> Result<f64> {
    a.require(1)?;
    b.require(1)?;
    let (xa, xb) = (a.samples(), b.samples());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Result of the log-log tail regression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    /// `-slope` over the whole grid.
    pub alpha: f64,
    /// `-slope` over the lower and upper halves of the grid.
    pub alpha_lower: f64,
    pub alpha_upper: f64,
    /// False when the two half-grid slopes differ by more than
    /// [`POWER_LAW_SPREAD`] relative to the full fit.
    pub power_law: bool,
    pub n_min: f64,
    pub n_max: f64,
    /// `(n, empirical P(r > n))` on the logarithmic grid.
    pub grid: Vec<(f64, f64)>,
}

pub const POWER_LAW_SPREAD: f64 = 0.25;
/// Samples that must exceed `n_min` before a fit is attempted.
pub const MIN_EXCEEDANCES: usize = 500;

/// Tail exponent by least squares of `log P(r > n)` on `log n` with the
/// default grid (16 points, top of the grid kept at 100 exceedances).
pub fn tail_exponent(samples: &[f64], n_min: f64) -> Result<TailFit> {
    tail_exponent_with(samples, n_min, 100, 16)
}

pub fn tail_exponent_with(
    samples: &[f64],
    n_min: f64,
    min_tail_count: usize,
    grid_points: usize,
) -> Result<TailFit> {
    if !(n_min > 0.0) || grid_points < 4 || min_tail_count == 0 {
        return Err(Error::Validation(
            "tail fit needs n_min > 0, at least 4 grid points and a positive tail count".into(),
        ));
    }
    let m = EmpiricalMeasure::new(samples.to_vec())?;
    let s = m.samples();
    let total = s.len() as f64;
    let exceed = |n: f64| s.len() - s.partition_point(|&x| x <= n);
    if exceed(n_min) < MIN_EXCEEDANCES {
        return Err(Error::Statistical(format!(
            "only {} samples exceed n_min = {n_min}; need {MIN_EXCEEDANCES}",
            exceed(n_min)
        )));
    }
    // Largest n still leaving `min_tail_count` samples above it.
    let n_max = s[s.len() - min_tail_count.min(s.len())];
    if !(n_max > n_min * 1.5) {
        return Err(Error::Statistical(format!(
            "tail range [{n_min}, {n_max}] too short for a fit"
        )));
    }
    let (l0, l1) = (n_min.ln(), n_max.ln());
    let grid: Vec<(f64, f64)> = (0..grid_points)
        .map(|i| {
            let n = (l0 + (l1 - l0) * i as f64 / (grid_points - 1) as f64).exp();
            (n, exceed(n) as f64 / total)
        })
        .collect();
    let slope = |pts: &[(f64, f64)]| {
        let k = pts.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(n, p) in pts {
            let (x, y) = (n.ln(), p.ln());
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        (k * sxy - sx * sy) / (k * sxx - sx * sx)
    };
    let half = grid_points / 2;
    let alpha = -slope(&grid);
    let alpha_lower = -slope(&grid[..half]);
    let alpha_upper = -slope(&grid[half..]);
    let power_law = (alpha_upper - alpha_lower).abs() <= POWER_LAW_SPREAD * alpha.abs();
    Ok(TailFit {
        alpha,
        alpha_lower,
        alpha_upper,
        power_law,
        n_min,
        n_max,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::task_rng;
    use rand::Rng;

    #[test]
    fn ecdf_is_right_continuous() {
        let m = EmpiricalMeasure::new(vec![3.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(m.ecdf(0.9), 0.0);
        assert_eq!(m.ecdf(2.0), 0.75);
        assert_eq!(m.ecdf(3.0), 1.0);
        assert_eq!(m.median(), 2.0);
    }

    #[test]
    fn own_ecdf_has_zero_distance() {
        let m = EmpiricalMeasure::new(vec![0.1, 0.5, 0.5, 0.9, 2.0]).unwrap();
        assert_eq!(ks_distance(&m, |x| m.ecdf(x)).unwrap(), 0.0);
        assert_eq!(two_sample_ks(&m, &m).unwrap(), 0.0);
    }

    #[test]
    fn uniform_checks() {
        let mut rng = task_rng(5, 0);
        let u: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        let m = EmpiricalMeasure::new(u).unwrap();
        let unif = |x: f64| x.clamp(0.0, 1.0);
        assert!(ks_distance(&m, unif).unwrap() < 0.02);
        assert!(ks_distance(&m, |x| (x - 0.5).clamp(0.0, 1.0)).unwrap() > 0.4);
        assert!(ks_distance(&EmpiricalMeasure::new(vec![]).unwrap(), unif).is_err());
    }

    #[test]
    fn two_sample_disjoint_is_one() {
        let a = EmpiricalMeasure::new(vec![0.0, 1.0]).unwrap();
        let b = EmpiricalMeasure::new(vec![2.0, 3.0, 4.0]).unwrap();
        assert_eq!(two_sample_ks(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn pareto_and_geometric_tails() {
        let mut rng = task_rng(8, 0);
        let pareto: Vec<f64> = (0..1_000_000)
            .map(|_| (1.0 - rng.random::<f64>()).powf(-1.0 / 1.5))
            .collect();
        let fit = tail_exponent(&pareto, 2.0).unwrap();
        assert!((fit.alpha - 1.5).abs() < 0.075, "{fit:?}");
        assert!(fit.power_law);

        let p: f64 = 0.05;
        let geometric: Vec<f64> = (0..1_000_000)
            .map(|_| ((1.0 - rng.random::<f64>()).ln() / (1.0 - p).ln()).floor() + 1.0)
            .collect();
        let fit = tail_exponent(&geometric, 5.0).unwrap();
        assert!(!fit.power_law, "{fit:?}");
        let later = tail_exponent(&geometric, 40.0).unwrap();
        assert!(later.alpha > fit.alpha);

        assert!(tail_exponent(&pareto[..100], 2.0).is_err());
    }
}
