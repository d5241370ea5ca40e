//! Interval dynamics: the LSV family, orbits, observables, initial laws and
//! invariant-density estimation.

mod density;
mod ergodic;
mod lsv;
mod observable;

pub use density::{estimate_invariant_density, sample_initial, DensityEstimate, DensitySpec};
pub use ergodic::{birkhoff_sum, long_run_averages, LongRunAverages, LongRunConfig};
pub use lsv::{iterate_orbit, left_preimage, lsv_map, preimage_sequence, MapKind, MapSpec, Orbit};
pub use observable::{Family, ObservableSpec, StepTerm};
