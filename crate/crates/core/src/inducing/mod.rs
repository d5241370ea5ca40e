//! The first-return system on `Y = [1/2, 1]`: return times, excursions and
//! induced sums, lap numbers, rescaled paths and the return-time partition.

mod chain;
mod excursion;
mod laps;
mod partition;
mod paths;
mod split;

pub use chain::{induced_start, InducedChain, InducedStart};
pub use excursion::{
    excursion, excursion_capped, excursion_summary, excursions_to_csv, in_y, phi_star_of,
    return_time, Direction, Excursion, ExcursionSummary, DEFAULT_RETURN_CAP, Y_LEFT,
};
pub use laps::{decompose_birkhoff, lap_numbers, LapTrace};
pub use partition::{return_partition, PartitionCell, ReturnPartition};
pub use paths::{scaled_paths, ScaledPathBundle};
pub use split::split_observable;
