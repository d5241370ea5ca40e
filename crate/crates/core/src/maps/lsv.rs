use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum MapKind {
    #[default]
    #[serde(rename = "LSV")]
    Lsv,
}

/// Parameters of an intermittent map of the Liverani-Saussol-Vaienti family
///
/// ```text
/// f(x) = x (1 + (2x)^gamma)   for 0 <= x <= 1/2
/// f(x) = 2x - 1               for 1/2 < x <= 1
/// ```
///
/// with a neutral fixed point at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec<T> {
    pub gamma: T,
    #[serde(default)]
    pub kind: MapKind,
}

impl<T: Real> MapSpec<T> {
    pub fn lsv(gamma: T) -> Result<Self> {
        let spec = Self {
            gamma,
            kind: MapKind::Lsv,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > T::zero() && self.gamma < T::one()) {
            return Err(Error::Domain(format!(
                "gamma must lie strictly inside (0,1), got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Stable exponent `alpha = 1/gamma` of the associated limit law.
    pub fn alpha(&self) -> T {
        self.gamma.recip()
    }

    /// One application of the map without domain checks.
    ///
    /// The left branch is written as `x (1 + (2x)^gamma)` so that `f(1/2) = 1`
    /// holds exactly in floating point.
    #[inline]
    pub fn step(&self, x: T) -> T {
        let half = T::lit(0.5);
        if x <= half {
            let two_x = x + x;
            x * (T::one() + two_x.powf(self.gamma))
        } else {
            x + x - T::one()
        }
    }

    /// Derivative of the left branch, used by the preimage solver.
    #[inline]
    fn left_slope(&self, x: T) -> T {
        let two_x = x + x;
        T::one() + (T::one() + self.gamma) * two_x.powf(self.gamma)
    }

    pub fn orbit(&self, x0: T, n: usize) -> Result<Orbit<T>> {
        check_unit(x0)?;
        Ok(Orbit {
            map: *self,
            x: x0,
            remaining: n,
        })
    }
}

fn check_unit<T: Real>(x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("point {x} outside [0,1]")))
    }
}

/// Evaluates the map at `x`, rejecting points outside `[0,1]`.
pub fn lsv_map<T: Real>(spec: &MapSpec<T>, x: T) -> Result<T> {
    check_unit(x)?;
    Ok(spec.step(x))
}

/// Streaming orbit `x0, f(x0), ..., f^{n-1}(x0)`.
#[derive(Debug, Clone)]
pub struct Orbit<T> {
    map: MapSpec<T>,
    x: T,
    remaining: usize,
}

impl<T: Real> Iterator for Orbit<T> {
    type Item = T;

    #[inline]
    fn next(&mut self) -> Option<T> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.x;
        self.x = self.map.step(current);
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<T: Real> ExactSizeIterator for Orbit<T> {}

/// Orbit of length `n` started at `x0`, as an iterator.
pub fn iterate_orbit<T: Real>(spec: &MapSpec<T>, x0: T, n: usize) -> Result<Orbit<T>> {
    spec.orbit(x0, n)
}

/// Left-branch preimages `x_1 = 1/2 > x_2 > ... > x_k` with `f(x_n) = x_{n-1}`.
///
/// Each point is bracketed in `[0, x_{n-1}]`, narrowed by bisection and then
/// polished with Newton steps kept inside the bracket. Tolerances are relative
/// to the root, since `x_n` decays like `n^{-1/gamma}`.
pub fn preimage_sequence<T: Real>(spec: &MapSpec<T>, k: usize) -> Result<Vec<T>> {
    spec.validate()?;
    if k == 0 {
        return Err(Error::Validation("preimage_sequence needs k >= 1".into()));
    }
    let mut out = Vec::with_capacity(k);
    out.push(T::lit(0.5));
    for _ in 1..k {
        let target = *out.last().expect("nonempty");
        out.push(left_preimage(spec, target)?);
    }
    Ok(out)
}

/// Solves `x (1 + (2x)^gamma) = target` on the left branch.
pub fn left_preimage<T: Real>(spec: &MapSpec<T>, target: T) -> Result<T> {
    let rel_tol = T::lit(1e-14);
    let mut lo = T::zero();
    let mut hi = target;
    let residual = |x: T| spec.step(x) - target;

    // Bisection down to a loose relative bracket.
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if residual(mid) > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= T::lit(1e-6) * hi {
            break;
        }
    }

    let mut x = (lo + hi) * T::lit(0.5);
    for _ in 0..100 {
        let r = residual(x);
        if r > T::zero() {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - r / spec.left_slope(x);
        if !(next > lo && next < hi) {
            next = (lo + hi) * T::lit(0.5);
        }
        let delta = (next - x).abs();
        x = next;
        if delta <= rel_tol * x || hi - lo <= rel_tol * hi {
            return Ok(x);
        }
    }
    Err(Error::Numeric(format!(
        "left preimage of {target} did not converge"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g: f64) -> MapSpec<f64> {
        MapSpec::lsv(g).unwrap()
    }

    #[test]
    fn branch_values() {
        let s = spec(0.6);
        assert_eq!(lsv_map(&s, 0.5).unwrap(), 1.0);
        assert_eq!(lsv_map(&s, 0.0).unwrap(), 0.0);
        assert_eq!(lsv_map(&s, 0.75).unwrap(), 0.5);
        assert_eq!(lsv_map(&spec(0.9), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_points_outside_unit_interval() {
        let s = spec(0.6);
        assert!(matches!(lsv_map(&s, -0.1), Err(Error::Domain(_))));
        assert!(matches!(lsv_map(&s, 1.0 + 1e-12), Err(Error::Domain(_))));
        assert!(matches!(lsv_map(&s, f64::NAN), Err(Error::Domain(_))));
        assert!(s.orbit(2.0, 3).is_err());
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(MapSpec::lsv(0.0).is_err());
        assert!(MapSpec::lsv(1.0).is_err());
        assert!(MapSpec::lsv(f64::NAN).is_err());
    }

    #[test]
    fn short_orbits() {
        let s = spec(0.6);
        let a: Vec<f64> = s.orbit(1.0, 3).unwrap().collect();
        assert_eq!(a, vec![1.0, 1.0, 1.0]);
        let b: Vec<f64> = s.orbit(0.75, 3).unwrap().collect();
        assert_eq!(b, vec![0.75, 0.5, 1.0]);
        assert_eq!(s.orbit(0.3, 0).unwrap().count(), 0);
    }

    #[test]
    fn generic_over_f32() {
        let s = MapSpec::<f32>::lsv(0.6).unwrap();
        assert_eq!(s.step(0.5f32), 1.0f32);
        assert_eq!(s.step(0.75f32), 0.5f32);
        let orbit: Vec<f32> = s.orbit(0.3, 5).unwrap().collect();
        let reference: Vec<f64> = spec(0.6).orbit(0.3, 5).unwrap().collect();
        for (a, b) in orbit.iter().zip(&reference) {
            assert!((f64::from(*a) - b).abs() < 1e-4);
        }
    }

    #[test]
    fn branches_strictly_increasing_on_dense_grids() {
        let s = spec(0.6);
        let n = 100_000;
        let mut prev = s.step(0.0);
        for i in 1..=n {
            let x = 0.5 * i as f64 / n as f64;
            let y = s.step(x);
            assert!(y > prev, "left branch not increasing at {x}");
            prev = y;
        }
        let mut prev = s.step(0.5 + 1e-9);
        for i in 1..=n {
            let x = 0.5 + 1e-9 + (0.5 - 1e-9) * i as f64 / n as f64;
            let y = s.step(x);
            assert!(y > prev, "right branch not increasing at {x}");
            prev = y;
        }
        assert_eq!(s.step(1.0), 1.0);
        assert!(s.step(0.5 + 1e-12) < 1e-11);
    }

    #[test]
    fn preimages_single() {
        assert_eq!(preimage_sequence(&spec(0.6), 1).unwrap(), vec![0.5]);
        assert!(preimage_sequence(&spec(0.6), 0).is_err());
    }

    #[test]
    fn preimages_residual_and_order() {
        for &g in &[0.3, 0.6, 0.75, 0.95] {
            let s = spec(g);
            let xs = preimage_sequence(&s, 50).unwrap();
            for w in xs.windows(2) {
                assert!(w[1] < w[0]);
                assert!(w[1] > 0.0);
                assert!((s.step(w[1]) - w[0]).abs() < 1e-12);
            }
        }
        let xs = preimage_sequence(&spec(0.6), 50).unwrap();
        assert!(xs[49] < xs[9]);
    }

    #[test]
    fn deep_preimages_keep_relative_accuracy() {
        let s = spec(0.6);
        let xs = preimage_sequence(&s, 20_000).unwrap();
        for w in xs.windows(2).step_by(997) {
            let rel = (s.step(w[1]) - w[0]).abs() / w[0];
            assert!(rel < 1e-13, "relative residual {rel}");
        }
    }
}
