use rand::Rng;
use serde::{Deserialize, Serialize};

use super::law::StableLaw;
use crate::cadlag::StepPath;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevyPathConfig {
    pub horizon: f64,
    pub grid_step: f64,
}

impl LevyPathConfig {
    pub fn cells(&self) -> Result<usize> {
        if !(self.horizon > 0.0 && self.grid_step > 0.0 && self.grid_step <= self.horizon) {
            return Err(Error::Validation(format!(
                "Levy grid needs 0 < grid_step <= horizon, got {self:?}"
            )));
        }
        let cells = (self.horizon / self.grid_step).round();
        if ((cells * self.grid_step) - self.horizon).abs() > 1e-9 * self.horizon {
            return Err(Error::Validation(format!(
                "grid_step {} does not divide horizon {}",
                self.grid_step, self.horizon
            )));
        }
        Ok(cells as usize)
    }
}

/// Step path of the stable Lévy process on a regular grid: i.i.d. increments
/// distributed as `grid_step^{1/alpha} G`, starting from 0.
pub fn sample_levy_path<R: Rng + ?Sized>(
    law: &StableLaw,
    config: &LevyPathConfig,
    rng: &mut R,
) -> Result<StepPath<f64>> {
    law.validate()?;
    let cells = config.cells()?;
    let scale = config.grid_step.powf(1.0 / law.alpha);
    let mut times = Vec::with_capacity(cells);
    let mut values = Vec::with_capacity(cells);
    let mut level = 0.0;
    for k in 1..=cells {
        level += scale * law.sample(rng);
        let t = if k == cells {
            config.horizon
        } else {
            k as f64 * config.grid_step
        };
        times.push(t);
        values.push(level);
    }
    StepPath::new(config.horizon, 0.0, times, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::task_rng;

    #[test]
    fn starts_at_zero_on_grid() {
        let law = StableLaw::new(1.6, 1.0, 1).unwrap();
        let cfg = LevyPathConfig {
            horizon: 1.0,
            grid_step: 0.01,
        };
        let p = sample_levy_path(&law, &cfg, &mut task_rng(1, 0)).unwrap();
        assert_eq!(p.eval(0.0), 0.0);
        assert_eq!(p.initial_value(), 0.0);
        assert!(p.jump_count() <= 100);
        assert_eq!(p.domain_end(), 1.0);
        for b in p.breakpoints() {
            let k = (b / 0.01).round();
            assert!((b - k * 0.01).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_dividing_grid() {
        let law = StableLaw::new(1.6, 1.0, 1).unwrap();
        let cfg = LevyPathConfig {
            horizon: 1.0,
            grid_step: 0.3,
        };
        assert!(sample_levy_path(&law, &cfg, &mut task_rng(1, 0)).is_err());
    }
}
