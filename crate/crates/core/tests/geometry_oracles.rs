mod common;

use landau_dpp::geometry::{
    euclidean_lens_complement_area, hyperbolic_disc_area, hyperbolic_lens_integral,
    hyperbolic_lens_integral_transformed,
};
use landau_dpp::QuadratureConfig;

#[test]
fn lens_integral_against_polar_oracle() {
    let cfg = QuadratureConfig::default();
    for (z, r) in [(0.6, 0.5), (0.6, 0.99), (0.3, 0.8), (0.9, 0.2)] {
        let oracle = common::hyperbolic_lens_polar_oracle(r, z);
        let direct = hyperbolic_lens_integral(r, z, &cfg).unwrap().value;
        let transformed = hyperbolic_lens_integral_transformed(r, z, &cfg).unwrap().value;
        assert!((direct - oracle).abs() < 1e-7 * oracle.max(1.0), "|z|={z} r={r}: {direct} vs {oracle}");
        assert!((transformed - oracle).abs() < 1e-7 * oracle.max(1.0), "|z|={z} r={r}: {transformed} vs {oracle}");
    }
}

#[test]
fn disjoint_lens_is_half_the_disc() {
    // |z| = 0.9 > 2r/(1+r^2) for r = 0.2: the image disc misses D_r entirely
    let oracle = common::hyperbolic_lens_polar_oracle(0.2, 0.9);
    assert!((oracle - 0.5 * hyperbolic_disc_area(0.2)).abs() < 1e-9);
}

#[test]
fn euclidean_lens_against_sampling() {
    for (r, z) in [(1.0, 0.0), (1.0, 0.1), (0.5, 0.9), (2.0, 1.0), (1.0, 1.999)] {
        let sampled = common::euclidean_lens_monte_carlo(r, z, 1200, 11);
        let exact = euclidean_lens_complement_area(r, z);
        assert!((sampled - exact).abs() < 1e-3 * std::f64::consts::PI * r * r, "r={r} |z|={z}");
    }
}
