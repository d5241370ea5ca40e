use super::excursion::{check_start, in_y, Envelope, ExcursionSummary};
use crate::cadlag::StepPath;
use crate::error::{Error, Result};
use crate::maps::{MapSpec, ObservableSpec};

/// Rescaled partial-sum paths of one orbit started in `Y`:
///
/// ```text
/// W_n(s) = phi_{[sn]} / B(n)        full system
/// P_n(t) = Phi_{[tn]} / B(n)        induced system
/// U_n(s) = P_n(N_{[sn]} / n)        induced sums read in full-system time
/// ```
///
/// with `B(n) = n^{1/alpha}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPathBundle {
    pub n: usize,
    pub horizon: f64,
    pub b_n: f64,
    pub w: StepPath<f64>,
    pub u: StepPath<f64>,
    pub p: StepPath<f64>,
    /// Excursions `F^0(y), ..., F^{[Tn]+1}(y)`.
    pub excursions: Vec<ExcursionSummary>,
    /// `r_0 = 0, r_1, ...` up to the last return at or before `[Tn]`.
    pub return_sums: Vec<u64>,
}

impl ScaledPathBundle {
    /// `max_{0 <= j <= [Tn]+1} (r / n + 2 Phi* / B(n)) o F^j`.
    pub fn excursion_bound(&self) -> f64 {
        let n = self.n as f64;
        self.excursions
            .iter()
            .map(|e| e.return_time as f64 / n + 2.0 * e.phi_star / self.b_n)
            .fold(0.0, f64::max)
    }

    /// `|W_n(T) - U_n(T)|`: the part of the last excursion still open at `T`.
    pub fn terminal_gap(&self) -> f64 {
        (self.w.final_value() - self.u.final_value()).abs()
    }

    /// Grid size `[Tn]`.
    pub fn steps(&self) -> usize {
        grid_steps(self.horizon, self.n)
    }

    /// `u_n(j/n) = N_j / n` on the grid `j = 0..[Tn]`.
    pub fn time_change(&self) -> Vec<f64> {
        let n = self.n as f64;
        let mut out = Vec::with_capacity(self.steps() + 1);
        let mut laps = 0usize;
        for j in 0..=self.steps() {
            while laps + 1 < self.return_sums.len() && self.return_sums[laps + 1] <= j as u64 {
                laps += 1;
            }
            out.push(laps as f64 / n);
        }
        out
    }
}

fn grid_steps(horizon: f64, n: usize) -> usize {
    (horizon * n as f64).floor() as usize
}

fn grid_time(j: usize, n: usize, horizon: f64) -> f64 {
    (j as f64 / n as f64).min(horizon)
}

pub fn scaled_paths(
    spec: &MapSpec<f64>,
    obs: &ObservableSpec,
    y: f64,
    n: usize,
    horizon: f64,
    cap: u64,
) -> Result<ScaledPathBundle> {
    check_start(y)?;
    if n == 0 || !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Validation(format!(
            "scaled paths need n >= 1 and T > 0, got n = {n}, T = {horizon}"
        )));
    }
    spec.validate()?;
    let b_n = (n as f64).powf(spec.alpha().recip());
    let m = grid_steps(horizon, n);

    let mut excursions = Vec::with_capacity(m + 2);
    let mut full_sums = Vec::with_capacity(m + 1);
    full_sums.push(0.0f64);
    let mut return_sums = vec![0u64];
    let mut acc = 0.0f64;
    let mut time = 0u64;
    let mut x = y;
    for _ in 0..m + 2 {
        let start = x;
        let mut env = Envelope::default();
        let mut r = 0u64;
        loop {
            if r >= cap {
                return Err(Error::Truncated { cap, partial: r });
            }
            let v = obs.eval(x);
            env.push(v);
            // The full-system grid only needs the first [Tn] values.
            if time < m as u64 {
                acc += v;
                time += 1;
                full_sums.push(acc);
            }
            x = spec.step(x);
            r += 1;
            if in_y(x) {
                break;
            }
        }
        excursions.push(ExcursionSummary {
            start,
            end: x,
            return_time: r,
            induced_value: env.sum,
            phi_star: env.phi_star(),
            direction: env.direction(),
        });
    }

    let mut r = 0u64;
    for e in &excursions {
        r += e.return_time;
        if r > m as u64 {
            break;
        }
        return_sums.push(r);
    }

    let scale = |v: f64| v / b_n;
    let grid = |j: usize| grid_time(j, n, horizon);

    let w = StepPath::new(
        horizon,
        0.0,
        (1..=m).map(grid).collect(),
        full_sums[1..=m].iter().map(|&v| scale(v)).collect(),
    )?;

    let mut induced = Vec::with_capacity(m + 1);
    let mut phi = 0.0f64;
    induced.push(0.0);
    for e in excursions.iter().take(m) {
        phi += e.induced_value;
        induced.push(phi);
    }
    let p = StepPath::new(
        horizon,
        0.0,
        (1..=m).map(grid).collect(),
        induced[1..=m].iter().map(|&v| scale(v)).collect(),
    )?;

    let laps = return_sums.len() - 1;
    let u = StepPath::new(
        horizon,
        0.0,
        return_sums[1..].iter().map(|&r| grid(r as usize)).collect(),
        induced[1..=laps].iter().map(|&v| scale(v)).collect(),
    )?;

    Ok(ScaledPathBundle {
        n,
        horizon,
        b_n,
        w,
        u,
        p,
        excursions,
        return_sums,
    })
}
