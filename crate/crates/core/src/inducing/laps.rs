use serde::{Deserialize, Serialize};

use super::excursion::{in_y, Y_LEFT};
use crate::error::{Error, Result};
use crate::maps::{MapSpec, ObservableSpec};

/// Lap numbers `N_0..N_{k_max}` of one orbit together with the return sums
/// `r_0 = 0 < r_1 < ...` (times of the visits to `Y` at steps `>= 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LapTrace {
    pub horizon: usize,
    pub lap_numbers: Vec<u64>,
    pub return_sums: Vec<u64>,
}

impl LapTrace {
    /// `N_k = max{n : r_n <= k}` recomputed from the return sums.
    pub fn lap_from_returns(&self, k: usize) -> u64 {
        let k = k as u64;
        (self.return_sums.partition_point(|&r| r <= k) - 1) as u64
    }
}

/// Lap numbers of the orbit of `x0` up to `k_max`, cross-checked between the
/// indicator sum and the inverse of the return sums.
pub fn lap_numbers(spec: &MapSpec<f64>, x0: f64, k_max: usize) -> Result<LapTrace> {
    if k_max == 0 {
        return Err(Error::Validation("lap_numbers needs k_max >= 1".into()));
    }
    let mut x = x0;
    let mut laps = Vec::with_capacity(k_max + 1);
    let mut returns = vec![0u64];
    laps.push(0u64);
    let mut n = 0u64;
    for k in 1..=k_max {
        x = crate::maps::lsv_map(spec, x)?;
        if in_y(x) {
            n += 1;
            returns.push(k as u64);
        }
        laps.push(n);
    }
    let trace = LapTrace {
        horizon: k_max,
        lap_numbers: laps,
        return_sums: returns,
    };
    // Walk the two representations together.
    let mut m = 0usize;
    for k in 0..=k_max {
        while m + 1 < trace.return_sums.len() && trace.return_sums[m + 1] <= k as u64 {
            m += 1;
        }
        assert_eq!(trace.lap_numbers[k], m as u64, "lap representations differ at k = {k}");
    }
    Ok(trace)
}

/// `phi_k(y) = Phi_{N_k}(y) + R_k(y)`: the sum over the completed excursions
/// and the remainder from the incomplete last one.
pub fn decompose_birkhoff(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    y: f64,
    k: usize,
) -> Result<(f64, f64)> {
    if !(Y_LEFT..=1.0).contains(&y) {
        return Err(Error::Domain(format!("start point {y} is not in Y")));
    }
    let mut x = y;
    let mut head = 0.0;
    let mut current = 0.0;
    for _ in 0..k {
        current += obs.eval(x);
        x = spec.step(x);
        if in_y(x) {
            head += current;
            current = 0.0;
        }
    }
    Ok((head, current))
}
