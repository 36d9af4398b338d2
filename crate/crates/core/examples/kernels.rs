//! Correlation kernels of the planar and hyperbolic processes.
//!
//! ```bash
//! cargo run --release --example kernels
//! ```

use landau_dpp::kernels::f_profile_at_distance;
use landau_dpp::{f_profile, fock_kernel_sq_weighted, hyperbolic_kernel, ComplexPoint, EuclideanLevel, HyperbolicLevel};

fn main() {
    let z = ComplexPoint::new(0.3, 0.2);
    let w = ComplexPoint::new(-0.1, 0.4);

    for n in 0..3 {
        let k = fock_kernel_sq_weighted(EuclideanLevel::new(n), z, w);
        println!("level n = {n}: |K_n(z,w)|^2 e^-|z|^2 e^-|w|^2 / pi^2 = {k:.6e}");
    }

    let level = HyperbolicLevel::new(2.5, 1).unwrap();
    println!("\nnu = {}, m = {}, energy {}", level.nu(), level.m(), level.energy());
    let g = hyperbolic_kernel(level, z, w).unwrap();
    let g_t = hyperbolic_kernel(level, w, z).unwrap();
    println!("G(z,w) = {g:.6}\nG(w,z) = {g_t:.6} (conjugate)");
    println!("G(z,z) = {:.6} (real)", hyperbolic_kernel(level, z, z).unwrap().re);

    println!("\nprofile f(rho) and the same value by distance");
    for rho in [0.0f64, 0.3, 0.6, 0.9, 0.99] {
        let by_rho = f_profile(level, rho).unwrap();
        let by_d = f_profile_at_distance(level, rho.atanh());
        println!("  rho = {rho:<4}: {by_rho:.6e}  {by_d:.6e}");
    }

    match HyperbolicLevel::new(1.0, 1) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nHyperbolicLevel::new(1.0, 1): {e}"),
    }
}
