//! Run configuration. Every level rejects unknown keys.

use std::path::{Path, PathBuf};

use intermittency::diagnostics::{
    ExcursionBoundConfig, LapConfig, MonotonicityConfig, StableCheckConfig, TailConfig,
    TopologyConfig, WipConfig,
};
use intermittency::maps::{LongRunConfig, MapSpec, ObservableSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub map: MapSpec<f64>,
    pub observable: ObservableSpec,
    #[serde(default)]
    pub calibration: CalibrationConfig,
    #[serde(default)]
    pub suites: SuitesConfig,
    #[serde(default)]
    pub paths_demo: PathsDemoConfig,
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_plot")]
    pub plot: bool,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_plot() -> bool {
    true
}

/// How `mu(Y)`, `h(1/2)` and the centering offset are obtained. Any of the
/// three may be pinned; the calibration orbits run only if one is missing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrationConfig {
    pub orbit_length: u64,
    pub chunks: u64,
    pub burn_in: u64,
    pub h_window: f64,
    /// Replace the observable's centering offset by the estimated mean.
    pub center_observable: bool,
    pub mu_y: Option<f64>,
    pub h_half: Option<f64>,
    pub centering_offset: Option<f64>,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        let lr = LongRunConfig::default();
        Self {
            orbit_length: lr.orbit_length,
            chunks: lr.chunks,
            burn_in: lr.burn_in,
            h_window: 0.01,
            center_observable: true,
            mu_y: None,
            h_half: None,
            centering_offset: None,
        }
    }
}

impl CalibrationConfig {
    pub fn long_run(&self) -> LongRunConfig {
        LongRunConfig {
            orbit_length: self.orbit_length,
            chunks: self.chunks,
            burn_in: self.burn_in,
        }
    }
}

/// Suites to run: a present key selects the suite with the given settings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuitesConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_consistency: Option<StableCheckConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_exponent: Option<TailConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lap_sllns: Option<LapConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monotonicity: Option<MonotonicityConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excursion_bound: Option<ExcursionBoundConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wip_marginal: Option<WipConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology_probe: Option<TopologyConfig>,
}

impl SuitesConfig {
    pub fn is_empty(&self) -> bool {
        self == &SuitesConfig::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PathsDemoConfig {
    pub n: usize,
    pub horizon: f64,
    pub levy_grid_step: f64,
    pub burn_in: u64,
}

impl Default for PathsDemoConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            horizon: 1.0,
            levy_grid_step: 1e-3,
            burn_in: 1000,
        }
    }
}

/// A configuration problem, reported with exit status 2.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn parse(text: &str, origin: &str) -> Result<RunConfig, SchemaError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| {
        SchemaError(format!(
            "{origin}: line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    validate(&config).map_err(|e| SchemaError(format!("{origin}: {e}")))?;
    Ok(config)
}

pub fn load(path: &Path) -> Result<RunConfig, SchemaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SchemaError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn validate(config: &RunConfig) -> Result<(), String> {
    config.map.validate().map_err(|e| format!("map: {e}"))?;
    config
        .observable
        .validate()
        .map_err(|e| format!("observable: {e}"))?;
    let c = &config.calibration;
    if c.chunks == 0 || c.orbit_length < c.chunks {
        return Err("calibration: need chunks >= 1 and orbit_length >= chunks".into());
    }
    if !(c.h_window > 0.0 && c.h_window < 1.0) {
        return Err("calibration.h_window must lie in (0,1)".into());
    }
    if let Some(mu) = c.mu_y {
        if !(mu > 0.0 && mu < 1.0) {
            return Err("calibration.mu_y must lie in (0,1)".into());
        }
    }
    if let Some(h) = c.h_half {
        if !(h > 0.0 && h.is_finite()) {
            return Err("calibration.h_half must be positive".into());
        }
    }
    let d = &config.paths_demo;
    if d.n == 0 || !(d.horizon > 0.0) || !(d.levy_grid_step > 0.0) {
        return Err("paths_demo: need n >= 1, horizon > 0 and levy_grid_step > 0".into());
    }
    Ok(())
}
