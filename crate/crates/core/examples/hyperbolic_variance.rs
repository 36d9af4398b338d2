//! Variance of the disc count for the hyperbolic-type process, by both lens routes.
//!
//! ```bash
//! cargo run --release --example hyperbolic_variance
//! ```

use landau_dpp::{variance_hyperbolic, variance_hyperbolic_via_transformed, HyperbolicLevel, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();

    // weighted Bergman case nu = 1: V = r^2 / (1 - r^4)
    let bergman = HyperbolicLevel::new(1.0, 0).unwrap();
    println!("nu = 1, m = 0");
    for r in [0.2, 0.5, 0.8, 0.95] {
        let v = variance_hyperbolic(bergman, r, &cfg).unwrap();
        println!("  r = {r:<4}: {:.12} (closed form {:.12}, est. err {:.1e})", v.value, r * r / (1.0 - r.powi(4)), v.error_estimate);
    }

    for (nu, m) in [(2.0, 1), (3.5, 2)] {
        let level = HyperbolicLevel::new(nu, m).unwrap();
        println!("\nnu = {nu}, m = {m}");
        for r in [0.3, 0.6, 0.9] {
            let a = variance_hyperbolic(level, r, &cfg).unwrap();
            let b = variance_hyperbolic_via_transformed(level, r, &cfg).unwrap();
            println!("  r = {r}: {} {:.12}  {} {:.12}", a.route, a.value, b.route, b.value);
        }
    }
}
