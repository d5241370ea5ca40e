//! Skorohod-space toolkit: step paths, completed graphs, and certified
//! brackets for the J1 and M1 distances.

mod graph;
mod infinite;
mod j1;
mod m1;
mod path;

use serde::{Deserialize, Serialize};

pub use graph::{completed_graph, CompletedGraph};
pub use infinite::{dist_infinite, InfiniteDistance, MetricKind, QuadratureConfig};
pub use j1::{j1_distance, j1_feasible};
pub use m1::m1_distance;
pub use path::StepPath;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_TOL: f64 = 1e-6;

/// Certified bracket `lower <= d <= upper` with `upper - lower <= tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricResult<T> {
    pub lower: T,
    pub upper: T,
    pub tolerance: T,
}

impl<T: Real> MetricResult<T> {
    fn exact(d: T, tolerance: T) -> Self {
        Self {
            lower: d,
            upper: d,
            tolerance,
        }
    }

    pub fn contains(&self, d: T) -> bool {
        self.lower <= d && d <= self.upper
    }

    pub fn midpoint(&self) -> T {
        (self.lower + self.upper) * T::lit(0.5)
    }
}

impl MetricResult<f64> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("tolerance must be positive, got {tol}")))
    }
}

/// Shrinks `[floor, ceiling]` around the threshold of a monotone decision
/// procedure. `floor` must be a lower bound of the distance and `ceiling` a
/// feasible value.
fn bisect<T: Real>(
    floor: T,
    ceiling: T,
    tol: T,
    name: &str,
    feasible: impl Fn(T) -> bool,
) -> Result<MetricResult<T>> {
    if floor >= ceiling {
        return Ok(MetricResult::exact(ceiling, tol));
    }
    // At the uniform distance the free space can be a single point, which
    // rounding may lose; nudge the witness up by a few ulps of the data.
    let scale = ceiling.abs().max(T::one());
    let mut slack = T::epsilon() * T::lit(4.0) * scale;
    let mut ceiling = ceiling;
    let mut accepted = feasible(ceiling);
    for _ in 0..8 {
        if accepted {
            break;
        }
        ceiling = ceiling + slack;
        slack = slack * T::lit(4.0);
        accepted = feasible(ceiling);
    }
    if !accepted {
        return Err(Error::Numeric(format!(
            "{name} decision rejected the uniform-distance witness {ceiling}"
        )));
    }
    if feasible(floor) {
        return Ok(MetricResult::exact(floor, tol));
    }
    let (mut lo, mut hi) = (floor, ceiling);
    while hi - lo > tol {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(feasible(hi) && !feasible(lo), "{name} decision not monotone");
    Ok(MetricResult {
        lower: lo,
        upper: hi,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_jump(at: f64) -> StepPath<f64> {
        StepPath::new(1.0, 0.0, vec![at], vec![1.0]).unwrap()
    }

    fn two_halves(at: f64, delta: f64) -> StepPath<f64> {
        StepPath::new(1.0, 0.0, vec![at, at + delta], vec![0.5, 1.0]).unwrap()
    }

    #[test]
    fn identical_paths_have_zero_bracket() {
        let g = StepPath::new(1.0, 0.2, vec![0.1, 0.5, 0.9], vec![1.0, -0.3, 0.4]).unwrap();
        for r in [
            j1_distance(&g, &g, 1e-6).unwrap(),
            m1_distance(&g, &g, 1e-6).unwrap(),
        ] {
            assert!(r.contains(0.0));
            assert!(r.upper - r.lower <= 1e-6);
        }
    }

    #[test]
    fn shifted_unit_jump() {
        let (a, b) = (unit_jump(0.4), unit_jump(0.5));
        for r in [
            j1_distance(&a, &b, 1e-6).unwrap(),
            m1_distance(&a, &b, 1e-6).unwrap(),
        ] {
            assert!(r.lower <= 0.1 + 1e-6 && r.upper >= 0.1 - 1e-6, "{r:?}");
            assert!(r.upper - r.lower <= 1e-6);
        }
    }

    #[test]
    fn two_half_jumps_discriminate() {
        let (a, b) = (unit_jump(0.5), two_halves(0.5, 0.01));
        let j = j1_distance(&a, &b, 1e-6).unwrap();
        let m = m1_distance(&a, &b, 1e-6).unwrap();
        assert!((j.midpoint() - 0.5).abs() <= 1e-6, "{j:?}");
        assert!(m.upper <= 0.01 + 1e-6, "{m:?}");
        assert!(m.lower >= 0.0);
    }

    #[test]
    fn constants_short_circuit() {
        let a = StepPath::constant(1.0, 0.0).unwrap();
        let b = StepPath::constant(1.0, 0.3).unwrap();
        assert_eq!(j1_distance(&a, &b, 1e-6).unwrap().lower, 0.3);
        assert_eq!(m1_distance(&a, &b, 1e-6).unwrap().upper, 0.3);
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = StepPath::constant(1.0, 0.0).unwrap();
        let b = StepPath::constant(2.0, 0.0).unwrap();
        assert!(j1_distance(&a, &b, 1e-6).is_err());
        assert!(m1_distance(&a, &b, 1e-6).is_err());
        assert!(m1_distance(&a, &a, 0.0).is_err());
        assert!(j1_distance(&a, &a, -1.0).is_err());
    }

    #[test]
    fn terminal_jumps_are_pinned() {
        // A jump at T cannot be moved earlier by a time change fixing T.
        let a = StepPath::new(1.0, 0.0, vec![1.0], vec![1.0]).unwrap();
        let b = StepPath::new(1.0, 0.0, vec![0.95], vec![1.0]).unwrap();
        let j = j1_distance(&a, &b, 1e-7).unwrap();
        assert!(j.contains(1.0), "{j:?}");
        let m = m1_distance(&a, &b, 1e-7).unwrap();
        assert!((m.midpoint() - 0.05f64).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn metric_result_json() {
        let r = MetricResult {
            lower: 0.25,
            upper: 0.5,
            tolerance: 0.25,
        };
        assert_eq!(r.to_json(), r#"{"lower":0.25,"upper":0.5,"tolerance":0.25}"#);
    }

    #[test]
    fn infinite_horizon_constants() {
        let a = StepPath::constant(30.0, 0.0).unwrap();
        let b = StepPath::constant(30.0, 0.3).unwrap();
        let quad = QuadratureConfig::default();
        for kind in [MetricKind::J1, MetricKind::M1] {
            let d = dist_infinite(&a, &b, kind, &quad).unwrap();
            assert!((d.value - 0.3).abs() <= d.uncertainty + 1e-9, "{d:?}");
            let same = dist_infinite(&a, &a, kind, &quad).unwrap();
            assert!(same.value.abs() <= same.uncertainty);
        }
        let far = StepPath::constant(30.0, 5.0).unwrap();
        let d = dist_infinite(&a, &far, MetricKind::M1, &quad).unwrap();
        assert!(d.value <= 1.0 + d.uncertainty);
        let bad = QuadratureConfig {
            panels: 0,
            ..quad
        };
        assert!(dist_infinite(&a, &b, MetricKind::J1, &bad).is_err());
        let short = StepPath::constant(5.0, 0.0).unwrap();
        assert!(dist_infinite(&short, &short, MetricKind::J1, &quad).is_err());
    }
}
