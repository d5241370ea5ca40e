use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Totally skewed alpha-stable law with characteristic function
///
/// ```text
/// E exp(itG) = exp{ -c |t|^alpha (1 - i s sgn(t) tan(alpha pi / 2)) }
/// ```
///
/// where `s = skew_sign`. In the conventional `(alpha, beta, sigma, delta)`
/// parametrization (first Samorodnitsky-Taqqu form) this is `beta = s`,
/// `sigma = c^{1/alpha}`, `delta = 0`: the exponent
/// `-sigma^alpha |t|^alpha (1 - i beta sgn(t) tan(pi alpha / 2))` matches
/// term by term once `sigma^alpha = c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableLaw {
    pub alpha: f64,
    pub c: f64,
    pub skew_sign: i8,
}

impl StableLaw {
    pub fn new(alpha: f64, c: f64, skew_sign: i8) -> Result<Self> {
        let law = Self { alpha, c, skew_sign };
        law.validate()?;
        Ok(law)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0 && self.alpha < 2.0) {
            return Err(Error::Domain(format!(
                "stable exponent must lie in (1,2), got {}",
                self.alpha
            )));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Domain(format!("scale constant must be positive, got {}", self.c)));
        }
        if self.skew_sign != 1 && self.skew_sign != -1 {
            return Err(Error::Domain(format!(
                "skew sign must be +1 or -1, got {}",
                self.skew_sign
            )));
        }
        Ok(())
    }

    /// Law of `n^{-1/alpha} phi_n` for the LSV map with parameter `gamma`:
    /// `alpha = 1/gamma` and
    /// `c = h(1/2) (alpha |phi(0)|)^alpha Gamma(1 - alpha) cos(alpha pi / 2) / 4`.
    ///
    /// On `(1,2)` both `Gamma(1 - alpha)` and `cos(alpha pi / 2)` are negative,
    /// so `c > 0`.
    pub fn from_lsv_params(gamma: f64, phi_at_zero: f64, h_half: f64) -> Result<Self> {
        if !(gamma > 0.5 && gamma < 1.0) {
            return Err(Error::Domain(format!(
                "gamma must lie in (1/2, 1) for a stable limit, got {gamma}"
            )));
        }
        if phi_at_zero == 0.0 || !phi_at_zero.is_finite() {
            return Err(Error::Hypothesis(
                "the stable limit requires phi(0) != 0".into(),
            ));
        }
        if !(h_half > 0.0 && h_half.is_finite()) {
            return Err(Error::Domain(format!("h(1/2) must be positive, got {h_half}")));
        }
        let alpha = 1.0 / gamma;
        let c = 0.25
            * h_half
            * (alpha * phi_at_zero.abs()).powf(alpha)
            * libm::tgamma(1.0 - alpha)
            * (alpha * PI / 2.0).cos();
        let skew_sign = if phi_at_zero > 0.0 { 1 } else { -1 };
        let law = Self { alpha, c, skew_sign };
        if !(law.c > 0.0) {
            return Err(Error::Numeric(format!("computed scale constant {c} is not positive")));
        }
        Ok(law)
    }

    pub fn sigma(&self) -> f64 {
        self.c.powf(1.0 / self.alpha)
    }

    pub fn beta(&self) -> f64 {
        f64::from(self.skew_sign)
    }

    pub fn cf(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let sgn = self.beta() * t.signum();
        let mag = self.c * t.abs().powf(self.alpha);
        let tan = (self.alpha * PI / 2.0).tan();
        Complex64::new(-mag, mag * sgn * tan).exp()
    }

    /// Law of `m^{-1/alpha} G`, i.e. `c -> c / m`: the induced-system limit
    /// seen on the time scale of the full system when `m` is the mean return
    /// time.
    pub fn rescale_full_system(&self, mean_return: f64) -> Result<Self> {
        if !(mean_return > 0.0 && mean_return.is_finite()) {
            return Err(Error::Validation(format!(
                "mean return must be positive, got {mean_return}"
            )));
        }
        Ok(Self {
            c: self.c / mean_return,
            ..*self
        })
    }

    /// Inverse of [`StableLaw::rescale_full_system`]: the limit of the induced
    /// sums `n^{-1/alpha} Phi_n` given the full-system law.
    pub fn induced_from_full(&self, mean_return: f64) -> Result<Self> {
        if !(mean_return > 0.0 && mean_return.is_finite()) {
            return Err(Error::Validation(format!(
                "mean return must be positive, got {mean_return}"
            )));
        }
        Ok(Self {
            c: self.c * mean_return,
            ..*self
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_from_gamma() {
        let law = StableLaw::from_lsv_params(0.6, 1.0, 1.0).unwrap();
        assert!((law.alpha - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(law.skew_sign, 1);
        assert_eq!(StableLaw::from_lsv_params(0.6, -2.0, 1.0).unwrap().skew_sign, -1);
    }

    #[test]
    fn scale_constant_positive_on_grid() {
        for i in 1..100 {
            let gamma = 0.5 + 0.5 * i as f64 / 100.0;
            for &phi0 in &[-3.0, -0.1, 0.2, 1.0, 5.0] {
                let law = StableLaw::from_lsv_params(gamma, phi0, 0.7).unwrap();
                assert!(law.c > 0.0, "gamma {gamma}, phi0 {phi0}");
            }
        }
    }

    #[test]
    fn scale_constant_value() {
        // alpha = 5/3: Gamma(-2/3) = -4.01840... and cos(5 pi / 6) = -sqrt(3)/2
        let law = StableLaw::from_lsv_params(0.6, 1.0, 1.0).unwrap();
        let alpha: f64 = 5.0 / 3.0;
        let expected = 0.25 * alpha.powf(alpha) * 4.018_407_802_061_617 * (3.0f64).sqrt() / 2.0;
        assert!((law.c - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn hypothesis_and_domain_errors() {
        assert!(matches!(
            StableLaw::from_lsv_params(0.6, 0.0, 1.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(StableLaw::from_lsv_params(0.4, 1.0, 1.0).is_err());
        assert!(StableLaw::from_lsv_params(1.0, 1.0, 1.0).is_err());
        assert!(StableLaw::from_lsv_params(0.6, 1.0, 0.0).is_err());
        assert!(StableLaw::new(2.0, 1.0, 1).is_err());
        assert!(StableLaw::new(1.5, 1.0, 0).is_err());
    }

    #[test]
    fn characteristic_function_shape() {
        let law = StableLaw::new(5.0 / 3.0, 1.3, 1).unwrap();
        assert_eq!(law.cf(0.0), Complex64::new(1.0, 0.0));
        for &t in &[0.5, 1.0, 2.0] {
            for s in [t, -t] {
                let z = law.cf(s);
                let expected = (-law.c * s.abs().powf(law.alpha)).exp();
                assert!((z.norm() - expected).abs() < 1e-15);
            }
            let (a, b) = (law.cf(t), law.cf(-t));
            assert!((a - b.conj()).norm() < 1e-15);
        }
        let mut prev = 1.0;
        for i in 1..200 {
            let m = law.cf(i as f64 * 0.02).norm();
            assert!(m < prev);
            prev = m;
        }
    }

    #[test]
    fn rescaling_composes() {
        let law = StableLaw::new(1.5, 2.0, -1).unwrap();
        assert_eq!(law.rescale_full_system(1.0).unwrap(), law);
        let two_step = law
            .rescale_full_system(2.0)
            .unwrap()
            .rescale_full_system(3.0)
            .unwrap();
        let one_step = law.rescale_full_system(6.0).unwrap();
        assert!((two_step.c - one_step.c).abs() < 1e-15);
        assert!(law.rescale_full_system(0.0).is_err());
        let back = law.induced_from_full(4.0).unwrap().rescale_full_system(4.0).unwrap();
        assert!((back.c - law.c).abs() < 1e-15);
    }

    #[test]
    fn json_form() {
        let law = StableLaw::new(1.5, 2.0, -1).unwrap();
        assert_eq!(law.to_json(), r#"{"alpha":1.5,"c":2.0,"skew_sign":-1}"#);
    }
}
