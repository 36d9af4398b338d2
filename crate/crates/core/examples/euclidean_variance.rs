//! Variance of the disc count for the Ginibre-type process.
//!
//! ```bash
//! cargo run --release --example euclidean_variance
//! ```

use landau_dpp::{variance_euclidean_geometric, variance_euclidean_shirai, EuclideanLevel, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    println!("{:>3} {:>6} {:>20} {:>20}", "n", "r", "convolution", "lens area");
    for n in 0..=2 {
        let level = EuclideanLevel::new(n);
        for r in [0.5, 1.0, 2.0] {
            let a = variance_euclidean_shirai(level, r, &cfg).unwrap().value;
            let b = variance_euclidean_geometric(level, r, &cfg).unwrap().value;
            println!("{n:>3} {r:>6} {a:>20.14} {b:>20.14}");
        }
    }

    // linear growth in r
    println!("\nV / r for large discs");
    for n in 0..=2 {
        let level = EuclideanLevel::new(n);
        let row: Vec<String> = [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|&r| format!("{:.6}", variance_euclidean_shirai(level, r, &cfg).unwrap().value / r))
            .collect();
        println!("  n = {n}: {}", row.join("  "));
    }
}
