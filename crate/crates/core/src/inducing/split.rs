use crate::error::{Error, Result};
use crate::maps::{Family, ObservableSpec, StepTerm};

/// Splits `phi = phi0 + phi_tilde` with
///
/// ```text
/// phi0 = phi(0) - phi(0) / mu(Y) * 1_Y,   phi_tilde = phi - phi0
/// ```
///
/// so that `phi0` integrates to zero and `phi_tilde(0) = 0` exactly.
pub fn split_observable(
    obs: &ObservableSpec,
    mu_y: f64,
) -> Result<(ObservableSpec, ObservableSpec)> {
    if !(mu_y > 0.0 && mu_y < 1.0) {
        return Err(Error::Validation(format!(
            "mu(Y) estimate must lie in (0,1), got {mu_y}"
        )));
    }
    obs.validate()?;
    let at_zero = obs.centered_at_zero();
    if at_zero == 0.0 {
        return Ok((ObservableSpec::constant(0.0), obs.clone()));
    }
    let indicator = |coef: f64| StepTerm {
        coef,
        left: 0.5,
        right: 1.0,
    };
    let mut phi0 = ObservableSpec::new(Family::Constant { value: at_zero });
    phi0.steps.push(indicator(-at_zero / mu_y));

    let mut tilde = obs.clone();
    tilde.steps.push(indicator(at_zero / mu_y));
    // Subtracting the value at 0 removes exactly phi(0).
    tilde.anchor_at_zero = true;
    Ok((phi0, tilde))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_add_up_and_tilde_vanishes_at_zero() {
        let obs = ObservableSpec::power(1.0, -2.0, 0.5).with_centering(0.13);
        let (phi0, tilde) = split_observable(&obs, 0.37).unwrap();
        assert_eq!(tilde.eval(0.0), 0.0);
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            assert!((phi0.eval(x) + tilde.eval(x) - obs.eval(x)).abs() < 1e-12);
        }
        assert!(split_observable(&obs, 1.0).is_err());
    }

    #[test]
    fn zero_at_origin_leaves_phi_alone() {
        let obs = ObservableSpec::affine(0.0, 1.0);
        let (phi0, tilde) = split_observable(&obs, 0.5).unwrap();
        assert_eq!(tilde, obs);
        assert_eq!(phi0.eval(0.7), 0.0);
    }
}
