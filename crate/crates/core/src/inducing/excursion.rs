use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{MapSpec, ObservableSpec};

/// Left end of the inducing set `Y = [1/2, 1]`.
pub const Y_LEFT: f64 = 0.5;

/// Default bound on the return-time search.
pub const DEFAULT_RETURN_CAP: u64 = 100_000_000;

#[inline]
pub fn in_y(x: f64) -> bool {
    x >= Y_LEFT
}

pub(crate) fn check_start(y: f64) -> Result<()> {
    if (Y_LEFT..=1.0).contains(&y) {
        Ok(())
    } else {
        Err(Error::Domain(format!("start point {y} is not in Y = [1/2, 1]")))
    }
}

/// First return time `r(y) = inf{k >= 1 : f^k(y) in Y}`.
pub fn return_time(spec: &MapSpec<f64>, y: f64, cap: u64) -> Result<u64> {
    check_start(y)?;
    let mut x = y;
    let mut k = 0u64;
    loop {
        if k >= cap {
            return Err(Error::Truncated { cap, partial: k });
        }
        x = spec.step(x);
        k += 1;
        if in_y(x) {
            return Ok(k);
        }
    }
}

/// Which of the two maxima in `Phi*` is the smaller one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The largest fall is smaller than the largest rise.
    Increasing,
    Decreasing,
    Tie,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Tie => "tie",
        })
    }
}

/// Running envelopes of a partial-sum sequence started at 0.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Envelope {
    pub sum: f64,
    pub up: f64,
    pub down: f64,
    /// `max_l (up_l - phi_l)`.
    pub fall: f64,
    /// `max_l (phi_l - down_l)`.
    pub rise: f64,
}

impl Envelope {
    #[inline]
    pub fn push(&mut self, v: f64) {
        self.sum += v;
        if self.sum > self.up {
            self.up = self.sum;
        }
        if self.sum < self.down {
            self.down = self.sum;
        }
        let fall = self.up - self.sum;
        if fall > self.fall {
            self.fall = fall;
        }
        let rise = self.sum - self.down;
        if rise > self.rise {
            self.rise = rise;
        }
    }

    #[inline]
    pub fn phi_star(&self) -> f64 {
        self.fall.min(self.rise)
    }

    pub fn direction(&self) -> Direction {
        if self.fall < self.rise {
            Direction::Increasing
        } else if self.rise < self.fall {
            Direction::Decreasing
        } else {
            Direction::Tie
        }
    }
}

/// Everything about one excursion except the partial sums themselves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcursionSummary {
    pub start: f64,
    /// `F(start) = f^r(start)`, the next point of the induced orbit.
    pub end: f64,
    pub return_time: u64,
    pub induced_value: f64,
    pub phi_star: f64,
    pub direction: Direction,
}

/// One excursion from `y` with its partial sums `phi_0 = 0, ..., phi_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Excursion {
    pub start: f64,
    pub return_time: u64,
    pub partial_sums: Vec<f64>,
    pub induced_value: f64,
    pub phi_star: f64,
    pub env_up: f64,
    pub env_down: f64,
    pub direction: Direction,
}

impl Excursion {
    pub fn summary(&self, end: f64) -> ExcursionSummary {
        ExcursionSummary {
            start: self.start,
            end,
            return_time: self.return_time,
            induced_value: self.induced_value,
            phi_star: self.phi_star,
            direction: self.direction,
        }
    }
}

/// Streams one excursion without storing partial sums.
#[inline]
pub fn excursion_summary(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    y: f64,
    cap: u64,
) -> Result<ExcursionSummary> {
    check_start(y)?;
    let mut env = Envelope::default();
    let mut x = y;
    let mut r = 0u64;
    loop {
        if r >= cap {
            return Err(Error::Truncated { cap, partial: r });
        }
        env.push(obs.eval(x));
        x = spec.step(x);
        r += 1;
        if in_y(x) {
            break;
        }
    }
    Ok(ExcursionSummary {
        start: y,
        end: x,
        return_time: r,
        induced_value: env.sum,
        phi_star: env.phi_star(),
        direction: env.direction(),
    })
}

/// Full excursion record from `y`, with `Phi*` computed twice: once from the
/// forward envelopes and once from suffix minima and maxima. The two must
/// agree.
pub fn excursion(spec: &MapSpec<f64>, obs: &ObservableSpec, y: f64) -> Result<Excursion> {
    excursion_capped(spec, obs, y, DEFAULT_RETURN_CAP)
}

pub fn excursion_capped(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    y: f64,
    cap: u64,
) -> Result<Excursion> {
    let r = return_time(spec, y, cap)?;
    let mut sums = Vec::with_capacity(r as usize + 1);
    sums.push(0.0);
    let mut env = Envelope::default();
    let mut x = y;
    for _ in 0..r {
        env.push(obs.eval(x));
        sums.push(env.sum);
        x = spec.step(x);
    }

    // Pairs l' <= l: fall = max(phi_l' - phi_l), rise = max(phi_l - phi_l').
    let (mut suffix_min, mut suffix_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut fall, mut rise) = (0.0f64, 0.0f64);
    for &s in sums.iter().rev() {
        suffix_min = suffix_min.min(s);
        suffix_max = suffix_max.max(s);
        fall = fall.max(s - suffix_min);
        rise = rise.max(suffix_max - s);
    }
    let backward = fall.min(rise);
    let forward = env.phi_star();
    if (backward - forward).abs() > 1e-12 * (1.0 + forward.abs()) {
        return Err(Error::Numeric(format!(
            "Phi* disagreement at y = {y}: envelopes {forward}, pairs {backward}"
        )));
    }
    let direction = env.direction();
    let envelope_form = match direction {
        Direction::Increasing | Direction::Tie => env.fall,
        Direction::Decreasing => env.rise,
    };
    debug_assert_eq!(envelope_form, forward);

    Ok(Excursion {
        start: y,
        return_time: r,
        induced_value: env.sum,
        partial_sums: sums,
        phi_star: forward,
        env_up: env.up,
        env_down: env.down,
        direction,
    })
}

/// `y,r,Phi,PhiStar,direction`.
pub fn excursions_to_csv(rows: &[ExcursionSummary]) -> String {
    let mut s = String::from("y,r,Phi,PhiStar,direction\n");
    for e in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            e.start, e.return_time, e.induced_value, e.phi_star, e.direction
        );
    }
    s
}

/// Envelope functional for an explicit partial-sum sequence.
pub fn phi_star_of(partial_sums: &[f64]) -> (f64, Direction) {
    let mut env = Envelope::default();
    for w in partial_sums.windows(2) {
        env.push(w[1] - w[0]);
    }
    (env.phi_star(), env.direction())
}
