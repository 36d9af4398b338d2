//! Exact law of the disc count for the weighted Bergman process.
//!
//! ```bash
//! cargo run --release --example bergman_counting
//! ```

use landau_dpp::{binomial_moment, build_profile, distribution, generating_function, variance_series};

fn main() {
    let (nu, r) = (1.5, 0.7);
    let profile = build_profile(nu, r, 1e-12).unwrap();
    println!("nu = {nu}, r = {r}: J = {} factors, tail <= {:.1e}", profile.truncation(), profile.tail_bound);
    for (j, p) in profile.probabilities.iter().take(5).enumerate() {
        println!("  p_{} = {p:.12}", j + 1);
    }

    let law = distribution(&profile);
    println!("\nmean {:.12}, variance {:.12}", law.mean, law.variance);
    for (n, p) in law.pmf.iter().take(8).enumerate() {
        println!("  P(N = {n}) = {p:.12}");
    }

    println!("\nbinomial moments E[C(N, k)]");
    for k in 1..=5 {
        println!("  k = {k}: {:.12}", binomial_moment(&profile, k).unwrap());
    }

    println!("\nE[(1 + s)^N]");
    for s in [-0.5f64, 0.25, 0.9] {
        let from_pmf = law.expect(|n| (1.0 + s).powi(n as i32));
        println!("  s = {s:<5}: product {:.14}  pmf {from_pmf:.14}", generating_function(&profile, s).unwrap());
    }

    println!("\nnu = 1 recovers r^2 / (1 - r^4)");
    for r in [0.5, 0.9] {
        let v = variance_series(1.0, r, 1e-12).unwrap();
        println!("  r = {r}: {:.14} vs {:.14}", v.value, r * r / (1.0 - r.powi(4)));
    }
}
