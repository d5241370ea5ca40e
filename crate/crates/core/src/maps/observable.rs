//! Observables on `[0,1]`: a Hölder base family plus piecewise-constant
//! indicator terms, minus an empirical centering offset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Constant { value: f64 },
    /// `a + b x`
    Affine { a: f64, b: f64 },
    /// `a + b x^eta` with `eta` in `(0,1]`
    Power { a: f64, b: f64, eta: f64 },
}

impl Family {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Family::Constant { value } => value,
            Family::Affine { a, b } => a + b * x,
            Family::Power { a, b, eta } => a + b * x.powf(eta),
        }
    }

    pub fn holder_exponent(&self) -> f64 {
        match *self {
            Family::Constant { .. } | Family::Affine { .. } => 1.0,
            Family::Power { eta, .. } => eta,
        }
    }
}

/// `coef * 1_[left, right]`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepTerm {
    pub coef: f64,
    pub left: f64,
    pub right: f64,
}

impl StepTerm {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if x >= self.left && x <= self.right {
            self.coef
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub family: Family,
    #[serde(default)]
    pub steps: Vec<StepTerm>,
    /// Subtracted from every evaluation so that the effective observable has
    /// mean zero under the invariant measure.
    #[serde(default)]
    pub centering_offset: f64,
    /// When set, the (centered) value at zero is subtracted as well, so that
    /// the observable vanishes at 0 exactly.
    #[serde(default)]
    pub anchor_at_zero: bool,
}

impl ObservableSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            steps: Vec::new(),
            centering_offset: 0.0,
            anchor_at_zero: false,
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(Family::Constant { value })
    }

    pub fn affine(a: f64, b: f64) -> Self {
        Self::new(Family::Affine { a, b })
    }

    pub fn power(a: f64, b: f64, eta: f64) -> Self {
        Self::new(Family::Power { a, b, eta })
    }

    pub fn with_step(mut self, coef: f64, left: f64, right: f64) -> Self {
        self.steps.push(StepTerm { coef, left, right });
        self
    }

    pub fn with_centering(mut self, offset: f64) -> Self {
        self.centering_offset = offset;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Validation(format!("observable {what} is not finite")))
            }
        };
        match self.family {
            Family::Constant { value } => finite(value, "constant")?,
            Family::Affine { a, b } => {
                finite(a, "a")?;
                finite(b, "b")?;
            }
            Family::Power { a, b, eta } => {
                finite(a, "a")?;
                finite(b, "b")?;
                if !(eta > 0.0 && eta <= 1.0) {
                    return Err(Error::Validation(format!(
                        "power exponent eta must lie in (0,1], got {eta}"
                    )));
                }
            }
        }
        for s in &self.steps {
            finite(s.coef, "step coefficient")?;
            if !(s.left <= s.right) {
                return Err(Error::Validation(format!(
                    "step interval [{}, {}] is empty",
                    s.left, s.right
                )));
            }
        }
        finite(self.centering_offset, "centering offset")
    }

    #[inline]
    fn raw(&self, x: f64) -> f64 {
        let mut v = self.family.eval(x);
        for s in &self.steps {
            v += s.eval(x);
        }
        v - self.centering_offset
    }

    /// Effective (centered) observable at `x`.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if self.anchor_at_zero {
            self.raw(x) - self.raw(0.0)
        } else {
            self.raw(x)
        }
    }

    /// The expression at 0 before centering.
    pub fn value_at_zero(&self) -> f64 {
        let mut v = self.family.eval(0.0);
        for s in &self.steps {
            v += s.eval(0.0);
        }
        v
    }

    /// The effective observable at 0, i.e. `phi(0)` after centering.
    pub fn centered_at_zero(&self) -> f64 {
        self.eval(0.0)
    }

    pub fn holder_exponent(&self) -> f64 {
        self.family.holder_exponent()
    }

    /// Candidate points where the piecewise structure can change.
    fn knots(&self) -> Vec<f64> {
        let mut k = vec![0.0, 1.0];
        for s in &self.steps {
            for p in [s.left, s.right] {
                if (0.0..=1.0).contains(&p) {
                    k.push(p);
                }
            }
        }
        k.sort_by(f64::total_cmp);
        k.dedup();
        k
    }

    /// `sup_{[0,1]} |phi|`.
    ///
    /// Exact for the built-in families: the base is monotone, so on each open
    /// piece between knots the supremum is reached in a one-sided limit at an
    /// endpoint, and knots themselves are evaluated directly.
    pub fn sup_abs(&self) -> f64 {
        let knots = self.knots();
        let anchor = if self.anchor_at_zero { self.raw(0.0) } else { 0.0 };
        let mut best = knots.iter().map(|&p| self.eval(p).abs()).fold(0.0, f64::max);
        for w in knots.windows(2) {
            let (p, q) = (w[0], w[1]);
            let mid = 0.5 * (p + q);
            let steps: f64 = self.steps.iter().map(|s| s.eval(mid)).sum();
            for end in [p, q] {
                let v = self.family.eval(end) + steps - self.centering_offset - anchor;
                best = best.max(v.abs());
            }
        }
        best
    }

    /// Largest `eps` such that `phi` keeps the strict sign of `phi(0)` on
    /// `[0, eps]`. Returns `None` when `phi(0) = 0`.
    pub fn sign_threshold(&self) -> Option<f64> {
        let v0 = self.eval(0.0);
        if v0 == 0.0 {
            return None;
        }
        let keeps = |x: f64| self.eval(x) * v0.signum() > 0.0;
        const GRID: usize = 1 << 16;
        let mut probes: Vec<f64> = (0..=GRID).map(|i| i as f64 / GRID as f64).collect();
        probes.extend(self.knots());
        probes.sort_by(f64::total_cmp);
        probes.dedup();
        let mut good = 0.0;
        for &p in &probes {
            if keeps(p) {
                good = p;
            } else {
                // Refine between the last good probe and the failing one.
                let (mut lo, mut hi) = (good, p);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if keeps(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Some(lo);
            }
        }
        Some(1.0)
    }
}
