use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::law::StableLaw;

impl StableLaw {
    /// One variate by the Chambers-Mallows-Stuck transform (`alpha != 1`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let alpha = self.alpha;
        let beta = self.beta();
        let tan = (PI * alpha / 2.0).tan();
        let b = (beta * tan).atan() / alpha;
        let s = (1.0 + beta * beta * tan * tan).powf(1.0 / (2.0 * alpha));
        // V uniform on (-pi/2, pi/2), W standard exponential
        let v = PI * (rng.random::<f64>() - 0.5);
        let v = v.clamp(-FRAC_PI_2 + 1e-300, FRAC_PI_2 - 1e-300);
        let w: f64 = Exp1.sample(rng);
        let shifted = alpha * (v + b);
        let x = s * shifted.sin() / v.cos().powf(1.0 / alpha)
            * ((v - shifted).cos() / w).powf((1.0 - alpha) / alpha);
        self.sigma() * x
    }
}

impl Distribution<f64> for StableLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        StableLaw::sample(self, rng)
    }
}
