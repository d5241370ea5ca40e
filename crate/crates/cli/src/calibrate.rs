//! Resolves `mu(Y)`, `h(1/2)` and the centering offset, running the long
//! calibration orbits only when the configuration leaves one of them open.

use intermittency::diagnostics::LimitLaws;
use intermittency::maps::{long_run_averages, MapSpec, ObservableSpec};
use intermittency::seeding::derive_seed;
use serde::Serialize;

use crate::config::CalibrationConfig;
use crate::Failure;

/// Where a calibrated value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Estimated,
    Config,
}

#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub mu_y: f64,
    pub mu_y_source: Source,
    pub h_half: f64,
    pub h_half_source: Source,
    pub centering_offset: f64,
    pub centering_source: Source,
    /// Calibration orbit settings and seed, present when the orbits ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_laws: Option<LimitLaws>,
    /// The observable after centering, as used by every suite.
    pub observable: ObservableSpec,
}

pub fn resolve(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    cal: &CalibrationConfig,
    seed: u64,
) -> Result<Resolved, Failure> {
    let offset_given = if cal.center_observable {
        cal.centering_offset
    } else {
        Some(obs.centering_offset)
    };
    let needs_orbits = cal.mu_y.is_none() || cal.h_half.is_none() || offset_given.is_none();
    let averages = if needs_orbits {
        let mut raw = obs.clone();
        raw.centering_offset = 0.0;
        raw.anchor_at_zero = false;
        let cal_seed = derive_seed(seed, "calibration");
        Some(
            long_run_averages(spec, &raw, &cal.long_run(), cal.h_window, cal_seed)
                .map_err(|e| Failure::runtime(format!("calibration: {e}")))?,
        )
    } else {
        None
    };
    let pick = |given: Option<f64>, estimate: Option<f64>| match given {
        Some(v) => (v, Source::Config),
        None => (estimate.expect("orbits ran"), Source::Estimated),
    };
    let (mu_y, mu_y_source) = pick(cal.mu_y, averages.map(|a| a.occupation_y));
    let (h_half, h_half_source) = pick(cal.h_half, averages.map(|a| a.h_half));
    let (centering_offset, centering_source) = pick(offset_given, averages.map(|a| a.mean_phi));
    let observable = obs.clone().with_centering(centering_offset);
    // The limit laws need phi(0) != 0; suites that use them report the error.
    let limit_laws = intermittency::diagnostics::limit_laws(spec, &observable, mu_y, h_half).ok();
    Ok(Resolved {
        mu_y,
        mu_y_source,
        h_half,
        h_half_source,
        centering_offset,
        centering_source,
        orbits: averages.map(|a| {
            serde_json::json!({
                "orbit_length": a.config.orbit_length,
                "chunks": a.config.chunks,
                "burn_in": a.config.burn_in,
                "h_window": a.h_window,
                "seed": a.seed,
            })
        }),
        limit_laws,
        observable,
    })
}
