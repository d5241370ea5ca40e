//! Simulation and verification toolkit for weak invariance principles of
//! intermittent interval maps.
//!
//! * [`maps`]: the LSV map family, orbits, observables and initial laws.
//! * [`inducing`]: return times to `Y = [1/2, 1]`, excursions, lap numbers and
//!   the rescaled path processes.
//! * [`cadlag`]: step paths, completed graphs and the Skorohod J1/M1 metrics.
//! * [`stable`]: totally skewed alpha-stable laws and Lévy paths.
//! * [`diagnostics`]: Monte Carlo suites tying simulations to the limit laws.
//!
//! Map and path geometry are generic over [`Real`]; the aliases below fix the
//! `f64` instantiation used by the statistical layers.

pub mod cadlag;
pub mod diagnostics;
pub mod error;
pub mod inducing;
pub mod maps;
pub mod scalar;
pub mod seeding;
pub mod stable;

pub use error::{Error, Result};
pub use scalar::Real;

pub type LsvMap = maps::MapSpec<f64>;
pub type Path = cadlag::StepPath<f64>;
pub type Graph = cadlag::CompletedGraph<f64>;
pub type Bracket = cadlag::MetricResult<f64>;
