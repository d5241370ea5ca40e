use serde::{Deserialize, Serialize};

use super::path::{domain_mismatch, StepPath};
use super::{j1_distance, m1_distance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricKind {
    J1,
    M1,
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "J1" => Ok(MetricKind::J1),
            "M1" => Ok(MetricKind::M1),
            other => Err(Error::Validation(format!("unknown metric `{other}`"))),
        }
    }
}

/// Settings for the truncated integral over `[0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub t_max: f64,
    /// Trapezoid panels at the coarse level; the fine level doubles them.
    pub panels: usize,
    /// Bracket width for the finite-horizon distances at the nodes.
    pub inner_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            t_max: 20.0,
            panels: 64,
            inner_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfiniteDistance {
    pub value: f64,
    /// Tail `e^{-t_max}` plus the quadrature error estimate plus the inner
    /// bracket width.
    pub uncertainty: f64,
}

/// `int_0^inf e^{-t} (1 ^ d_t(g1, g2)) dt`, truncated at `t_max`, with the
/// finite-horizon distance taken on the restrictions to `[0, t]`.
pub fn dist_infinite(
    g1: &StepPath<f64>,
    g2: &StepPath<f64>,
    metric: MetricKind,
    quad: &QuadratureConfig,
) -> Result<InfiniteDistance> {
    if !(quad.t_max > 0.0 && quad.t_max.is_finite() && quad.panels >= 1 && quad.inner_tol > 0.0) {
        return Err(Error::Validation(format!("invalid quadrature settings {quad:?}")));
    }
    if g1.start() != 0.0 || g2.start() != 0.0 {
        return Err(domain_mismatch(g1, g2));
    }
    if g1.domain_end() < quad.t_max || g2.domain_end() < quad.t_max {
        return Err(Error::Validation(format!(
            "paths must extend to t_max = {}",
            quad.t_max
        )));
    }
    let integrand = |t: f64| -> Result<f64> {
        let d = if t <= 0.0 {
            (g1.initial_value() - g2.initial_value()).abs()
        } else {
            let a = g1.restrict(0.0, t)?;
            let b = g2.restrict(0.0, t)?;
            let r = match metric {
                MetricKind::J1 => j1_distance(&a, &b, quad.inner_tol)?,
                MetricKind::M1 => m1_distance(&a, &b, quad.inner_tol)?,
            };
            0.5 * (r.lower + r.upper)
        };
        Ok((-t).exp() * d.min(1.0))
    };
    let fine = 2 * quad.panels;
    let h = quad.t_max / fine as f64;
    let values = (0..=fine)
        .map(|k| integrand(k as f64 * h))
        .collect::<Result<Vec<f64>>>()?;
    let trapezoid = |stride: usize| {
        let step = h * stride as f64;
        let inner: f64 = values[stride..fine].iter().step_by(stride).sum();
        step * (0.5 * (values[0] + values[fine]) + inner)
    };
    let coarse = trapezoid(2);
    let fine_est = trapezoid(1);
    let value = fine_est + (fine_est - coarse) / 3.0;
    let uncertainty = (-quad.t_max).exp() + (fine_est - coarse).abs() + quad.inner_tol;
    Ok(InfiniteDistance { value, uncertainty })
}
