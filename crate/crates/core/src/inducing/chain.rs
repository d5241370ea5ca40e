use rand::Rng;

use super::excursion::{excursion_summary, in_y, ExcursionSummary};
use crate::error::{Error, Result};
use crate::maps::{sample_initial, DensitySpec, MapSpec, ObservableSpec};

/// Start of an induced orbit: a point of `Y` reached from a draw of the
/// initial density after `burn_in` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedStart {
    pub y: f64,
    /// Steps actually taken: the burn-in plus the wait for the first visit.
    pub steps: u64,
}

/// Draws `x0` from `density`, runs `burn_in` steps and then moves on to the
/// next visit to `Y`. This stands in for sampling from `mu_Y`.
pub fn induced_start<R: Rng + ?Sized>(
    spec: &MapSpec<f64>,
    density: &DensitySpec,
    burn_in: u64,
    cap: u64,
    rng: &mut R,
) -> Result<InducedStart> {
    let mut x = sample_initial(density, rng)?;
    for _ in 0..burn_in {
        x = spec.step(x);
    }
    let mut steps = burn_in;
    let mut waited = 0u64;
    while !in_y(x) {
        if waited >= cap {
            return Err(Error::Truncated { cap, partial: waited });
        }
        x = spec.step(x);
        waited += 1;
    }
    steps += waited;
    Ok(InducedStart { y: x, steps })
}

/// Successive excursions `y, F(y), F^2(y), ...` of one induced orbit.
#[derive(Debug, Clone)]
pub struct InducedChain<'a> {
    spec: &'a MapSpec<f64>,
    obs: &'a ObservableSpec,
    y: f64,
    cap: u64,
}

impl<'a> InducedChain<'a> {
    pub fn new(spec: &'a MapSpec<f64>, obs: &'a ObservableSpec, y: f64, cap: u64) -> Self {
        Self { spec, obs, y, cap }
    }

    pub fn position(&self) -> f64 {
        self.y
    }

    pub fn next_excursion(&mut self) -> Result<ExcursionSummary> {
        let e = excursion_summary(self.spec, self.obs, self.y, self.cap)?;
        self.y = e.end;
        Ok(e)
    }
}
