//! Statistical checks that tie simulations to the limit theorems. Every
//! suite is deterministic under its seed and returns a [`SuiteReport`] whose
//! metrics carry their thresholds.

mod bound;
mod common;
mod laps;
mod monotonicity;
mod report;
mod stable_check;
mod stats;
mod tail;
mod topology;
mod wip;

pub use bound::{excursion_bound_check, ExcursionBoundConfig, ExcursionBoundThresholds};
pub use common::{normalizer, threshold_index, Sampling};
pub use laps::{lap_sllns, lap_sup_error, sample_return_times, LapConfig, LapThresholds};
pub use monotonicity::{monotonicity_suite, MonotonicityConfig, MonotonicityThresholds};
pub use report::{Comparison, Metric, SuiteReport, Table};
pub use stable_check::{stable_consistency_suite, StableCheckConfig, StableThresholds};
pub use stats::{
    ks_distance, ks_distance_continuous, median, tail_exponent, tail_exponent_with,
    two_sample_ks, EmpiricalMeasure, TailFit, MIN_EXCEEDANCES, POWER_LAW_SPREAD,
};
pub use tail::{tail_exponent_suite, TailConfig, TailThresholds};
pub use topology::{full_system_path, topology_probe, TopologyConfig, TopologyThresholds};
pub use wip::{limit_laws, wip_marginal_suite, LimitLaws, WipConfig, WipThresholds};
