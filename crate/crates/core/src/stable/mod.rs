//! Totally skewed alpha-stable laws: characteristic function, sampling,
//! distribution function and Lévy paths.

mod cdf;
mod law;
mod levy;
mod sampler;

pub use cdf::DEFAULT_CDF_TOL;
pub use law::StableLaw;
pub use levy::{sample_levy_path, LevyPathConfig};
