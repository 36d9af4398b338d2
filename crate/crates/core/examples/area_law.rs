//! The constant C in (1 - r^2) V(N_r) -> C as r -> 1, and its bound 2(nu - m) - 1.
//!
//! ```bash
//! cargo run --release --example area_law
//! ```

use landau_dpp::variance::{asymptotic_constant_bound, asymptotic_constant_half_angle};
use landau_dpp::{asymptotic_constant, variance_hyperbolic, HyperbolicLevel, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    for (nu, m) in [(1.0, 0), (2.0, 1), (3.2, 2), (5.0, 2)] {
        let level = HyperbolicLevel::new(nu, m).unwrap();
        let c = asymptotic_constant(level, &cfg).unwrap();
        let c_alt = asymptotic_constant_half_angle(level, &cfg).unwrap();
        println!("nu = {nu}, m = {m}: C = {c:.12} (alt. form {c_alt:.12}, bound {})", asymptotic_constant_bound(level));
        for r in [0.9, 0.99, 0.999] {
            let v = variance_hyperbolic(level, r, &cfg).unwrap().value;
            println!("  r = {r:<5}: (1 - r^2) V / C = {:.8}", (1.0 - r * r) * v / c);
        }
    }
}
