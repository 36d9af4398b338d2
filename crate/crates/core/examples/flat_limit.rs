//! Hyperbolic variance at nu = R^2/2 on the disc of radius r/R against the planar
//! variance at the same level and radius r.
//!
//! ```bash
//! cargo run --release --example flat_limit
//! ```

use landau_dpp::{contraction_check, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    for m in [0usize, 1, 2] {
        println!("m = {m}, r = 1");
        println!("  {:>4} {:>16} {:>16} {:>12} {:>12}", "R", "V_hyp", "V_planar", "V ratio", "R^2 ratio");
        for row in contraction_check(m, 1.0, &[4.0, 8.0, 16.0, 32.0], &cfg).unwrap() {
            println!(
                "  {:>4} {:>16.12} {:>16.12} {:>12.8} {:>12.4}",
                row.big_r, row.hyperbolic_variance, row.euclidean_target, row.unscaled_ratio, row.ratio
            );
        }
    }
}
