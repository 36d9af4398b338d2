//! Seeded sampling of the disc count as a sum of independent Bernoulli variables.
//!
//! ```bash
//! cargo run --release --example monte_carlo -- 42
//! ```

use landau_dpp::{build_profile, distribution, sample_counts};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let profile = build_profile(1.5, 0.7, 1e-12).unwrap();
    let law = distribution(&profile);
    let n = 100_000;
    let hist = sample_counts(&profile, seed, n).unwrap();

    let se = (law.variance / n as f64).sqrt();
    println!("seed {seed}, {n} draws");
    println!("  mean      {:.6} (exact {:.6}, {:+.2} SE)", hist.mean(), law.mean, (hist.mean() - law.mean) / se);
    println!("  variance  {:.6} (exact {:.6})", hist.variance(), law.variance);
    println!("\n  n  observed   expected");
    for (k, (&c, p)) in hist.counts.iter().zip(&law.pmf).enumerate().take(8) {
        println!("  {k}  {c:>8}  {:>9.1}", p * n as f64);
    }
}
