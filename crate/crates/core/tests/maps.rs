use intermittency::diagnostics::{ks_distance, EmpiricalMeasure};
use intermittency::maps::{
    estimate_invariant_density, iterate_orbit, lsv_map, preimage_sequence, sample_initial,
    DensitySpec, MapSpec,
};
use intermittency::seeding::task_rng;

/// Orbit of 0.3 under gamma = 0.6 (both as f64), iterated in 60-digit
/// arithmetic and rounded to the nearest double.
const ORBIT_0_3: [f64; 11] = [
    0.3,
    0.5208065768453499,
    0.04161315369069994,
    0.05097554968275354,
    0.06392934604535551,
    0.0825390050962947,
    0.11054640322052384,
    0.15524453630393456,
    0.23220082524962715,
    0.37875561327408075,
    0.6993770250530291,
];

#[test]
fn orbit_matches_high_precision_iteration() {
    let spec = MapSpec::lsv(0.6).unwrap();
    let orbit: Vec<f64> = iterate_orbit(&spec, 0.3, 11).unwrap().collect();
    for (k, (got, want)) in orbit.iter().zip(ORBIT_0_3).enumerate() {
        let rel = ((got - want) / want).abs();
        assert!(rel < 1e-12, "step {k}: {got} vs {want} (rel {rel:e})");
    }
}

#[test]
fn orbit_in_f32_tracks_the_first_steps() {
    let spec = MapSpec::<f32>::lsv(0.6).unwrap();
    let orbit: Vec<f32> = iterate_orbit(&spec, 0.3f32, 4).unwrap().collect();
    for (got, want) in orbit.iter().zip(ORBIT_0_3) {
        assert!((f64::from(*got) - want).abs() / want < 1e-4);
    }
}

#[test]
fn branch_examples() {
    let spec = MapSpec::lsv(0.6).unwrap();
    assert_eq!(lsv_map(&spec, 0.5).unwrap(), 1.0);
    assert_eq!(lsv_map(&spec, 0.0).unwrap(), 0.0);
    assert_eq!(lsv_map(&spec, 0.75).unwrap(), 0.5);
    let orbit: Vec<f64> = iterate_orbit(&spec, 0.75, 3).unwrap().collect();
    assert_eq!(orbit, vec![0.75, 0.5, 1.0]);
}

#[test]
fn uniform_samples_pass_ks() {
    let mut rng = task_rng(31, 0);
    let samples: Vec<f64> = (0..100_000)
        .map(|_| sample_initial(&DensitySpec::Uniform, &mut rng).unwrap())
        .collect();
    let d = ks_distance(&EmpiricalMeasure::new(samples).unwrap(), |x| x.clamp(0.0, 1.0)).unwrap();
    assert!(d < 0.01, "KS {d}");
}

#[test]
fn linear_density_mean() {
    let density = DensitySpec::Polynomial {
        coefficients: vec![0.0, 2.0],
    };
    let mut rng = task_rng(31, 1);
    let mean = (0..100_000)
        .map(|_| sample_initial(&density, &mut rng).unwrap())
        .sum::<f64>()
        / 1e5;
    assert!((mean - 2.0 / 3.0).abs() < 0.01, "{mean}");
}

#[test]
fn invariant_density_piles_up_at_the_fixed_point() {
    let spec = MapSpec::lsv(0.6).unwrap();
    let a = estimate_invariant_density(&spec, 10_000_000, 100, 1000, &mut task_rng(5, 0)).unwrap();
    let b = estimate_invariant_density(&spec, 10_000_000, 100, 1000, &mut task_rng(6, 0)).unwrap();
    assert!((a.masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(a.masses[0] > 0.01, "first bin mass {}", a.masses[0]);
    assert!(!a.low_quality);
    let rel = (a.h_half - b.h_half).abs() / a.h_half;
    assert!(rel < 0.05, "h(1/2): {} vs {}", a.h_half, b.h_half);
}

#[test]
fn preimages_decrease() {
    let spec = MapSpec::lsv(0.6).unwrap();
    let x: Vec<f64> = preimage_sequence(&spec, 50).unwrap();
    assert_eq!(x[0], 0.5);
    assert!(x.windows(2).all(|w| w[1] < w[0]));
    assert!(x[49] < x[9]);
    for n in 1..50 {
        assert!((spec.step(x[n]) - x[n - 1]).abs() < 1e-12);
    }
}
