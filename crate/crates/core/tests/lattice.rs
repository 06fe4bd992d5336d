use nvdnp::lattice_bath::{
    diamond_carbon_sites, hyperfine_from_position, mark_carbon13, nv_axis, sample_bath, PhysicalConstants,
};
use proptest::prelude::*;

fn rotate_about_axis(p: [f64; 3], axis: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let dot = p[0] * axis[0] + p[1] * axis[1] + p[2] * axis[2];
    let cross = [axis[1] * p[2] - axis[2] * p[1], axis[2] * p[0] - axis[0] * p[2], axis[0] * p[1] - axis[1] * p[0]];
    [0, 1, 2].map(|i| p[i] * c + cross[i] * s + axis[i] * dot * (1.0 - c))
}

#[test]
fn occupancy_is_binomial_over_many_seeds() {
    let consts = PhysicalConstants::default();
    let radius = 1.2e-9;
    let sites = diamond_carbon_sites(radius, consts.lattice_constant).len() as f64;
    let p = consts.abundance;
    let seeds = 1000;
    let counts: Vec<f64> = (0..seeds).map(|s| mark_carbon13(s, radius, &consts).len() as f64).collect();
    let mean = counts.iter().sum::<f64>() / seeds as f64;
    let var = counts.iter().map(|k| (k - mean).powi(2)).sum::<f64>() / (seeds as f64 - 1.0);
    let expected_mean = sites * p;
    let expected_var = sites * p * (1.0 - p);
    let sigma_mean = (expected_var / seeds as f64).sqrt();
    assert!((mean - expected_mean).abs() < 4.0 * sigma_mean, "mean {mean} vs {expected_mean}");
    // variance of the sample variance ≈ 2σ⁴/(n−1) for near-Poisson counts
    let sigma_var = expected_var * (2.0 / (seeds as f64 - 1.0)).sqrt();
    assert!((var - expected_var).abs() < 5.0 * sigma_var, "variance {var} vs {expected_var}");
}

#[test]
fn sampled_bath_is_ordered_and_filtered() {
    let consts = PhysicalConstants::default();
    let min = std::f64::consts::TAU * 3e3;
    for seed in 0..20 {
        let bath = sample_bath(seed, 1.5e-9, min, 6, &consts).unwrap();
        assert!(bath.len() <= 6);
        assert!(bath.iter().all(|n| n.coupling_strength() >= min));
        assert!(bath.windows(2).all(|w| w[0].coupling_strength() >= w[1].coupling_strength()));
    }
}

proptest! {
    #[test]
    fn couplings_scale_as_inverse_cube(x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0, k in 0.5f64..3.0) {
        let r = (x * x + y * y + z * z).sqrt();
        prop_assume!(r > 0.3);
        let consts = PhysicalConstants::default();
        let p = [x * 1e-9, y * 1e-9, z * 1e-9];
        let (a1, b1) = hyperfine_from_position(p, &consts).unwrap();
        let (a2, b2) = hyperfine_from_position(p.map(|v| v * k), &consts).unwrap();
        let s = k.powi(-3);
        prop_assert!((a2 - s * a1).abs() <= 1e-9 * a1.abs().max(1.0));
        prop_assert!((b2 - s * b1).abs() <= 1e-9 * b1.abs().max(1.0));
    }

    #[test]
    fn couplings_invariant_under_rotation_about_nv_axis(x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0,
                                                       phi in 0.0f64..std::f64::consts::TAU) {
        let r = (x * x + y * y + z * z).sqrt();
        prop_assume!(r > 0.3);
        let consts = PhysicalConstants::default();
        let p = [x * 1e-9, y * 1e-9, z * 1e-9];
        let q = rotate_about_axis(p, nv_axis(), phi);
        let (a1, b1) = hyperfine_from_position(p, &consts).unwrap();
        let (a2, b2) = hyperfine_from_position(q, &consts).unwrap();
        let scale = a1.hypot(b1);
        prop_assert!((a1 - a2).abs() <= 1e-9 * scale);
        prop_assert!((b1 - b2).abs() <= 1e-9 * scale);
    }
}
