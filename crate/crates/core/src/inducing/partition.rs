use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::excursion::{return_time, DEFAULT_RETURN_CAP};
use crate::error::{Error, Result};
use crate::maps::{preimage_sequence, MapSpec};

/// One cell `[left, right)` of `Y` on which the return time equals `n`.
/// The `r = 1` cell is closed, `[3/4, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionCell {
    pub n: u64,
    pub left: f64,
    pub right: f64,
    /// Lebesgue measure of the cell normalised by `|Y| = 1/2`.
    pub measure_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnPartition {
    pub cells: Vec<PartitionCell>,
}

impl ReturnPartition {
    /// Part of `Y` not covered by the listed cells, `[1/2, left of last cell)`.
    pub fn residual_length(&self) -> f64 {
        self.cells.last().map_or(0.5, |c| c.left - 0.5)
    }

    /// `n,left,right,measure_estimate`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,left,right,measure_estimate\n");
        for c in &self.cells {
            let _ = writeln!(s, "{},{},{},{}", c.n, c.left, c.right, c.measure_estimate);
        }
        s
    }
}

/// Cells of constant return time for `r = 1..=n_max`, each checked by
/// computing the return time at three interior points.
pub fn return_partition(spec: &MapSpec<f64>, n_max: usize) -> Result<ReturnPartition> {
    if n_max == 0 {
        return Err(Error::Validation("return_partition needs n_max >= 1".into()));
    }
    let x = preimage_sequence(spec, n_max)?;
    let mut cells = Vec::with_capacity(n_max);
    cells.push(PartitionCell {
        n: 1,
        left: 0.75,
        right: 1.0,
        measure_estimate: 0.5,
    });
    for n in 2..=n_max {
        let left = 0.5 * (1.0 + x[n - 1]);
        let right = 0.5 * (1.0 + x[n - 2]);
        cells.push(PartitionCell {
            n: n as u64,
            left,
            right,
            measure_estimate: 2.0 * (right - left),
        });
    }
    for c in &cells {
        for frac in [0.25, 0.5, 0.75] {
            let y = c.left + frac * (c.right - c.left);
            let r = return_time(spec, y, DEFAULT_RETURN_CAP)?;
            if r != c.n {
                return Err(Error::PartitionConsistency(format!(
                    "return time {r} at y = {y} inside the cell for r = {}",
                    c.n
                )));
            }
        }
    }
    Ok(ReturnPartition { cells })
}
