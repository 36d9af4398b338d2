//! Laguerre and Jacobi polynomials, Pochhammer ratios and the incomplete beta integral.
//!
//! ```bash
//! cargo run --release --example special_functions
//! ```

use landau_dpp::specfun::{
    incomplete_beta, jacobi_zero_beta, laguerre, pochhammer_over_factorial, IncompleteBetaRequest,
};

fn main() {
    println!("L_n(x) at x = 1.5");
    for n in 0..=5 {
        println!("  n = {n}: {:+.12}", laguerre(n, 1.5));
    }

    // P_m^{(0, R^2 - 2m - 1)}(1 - 2x/R^2) approaches L_m(x) as R grows
    println!("\nJacobi -> Laguerre, m = 2, x = 1");
    for big_r in [4.0f64, 8.0, 16.0, 64.0] {
        let beta = big_r * big_r - 5.0;
        let p = jacobi_zero_beta(2, beta, 1.0 - 2.0 / (big_r * big_r));
        println!("  R = {big_r:>4}: {p:+.10}  (limit {:+.10})", laguerre(2, 1.0));
    }

    println!("\n(2)_j / j! = j + 1");
    for j in [0usize, 5, 50, 500] {
        println!("  j = {j}: {}", pochhammer_over_factorial(2.0, j).unwrap());
    }

    println!("\nB_r(j, b) = int_0^(r^2) s^(j-1) (1-s)^(b-1) ds");
    for (r, j, b) in [(0.7, 1, 2.0), (0.5, 2, 3.0), (0.999, 3, 0.3)] {
        let req = IncompleteBetaRequest::new(r, j, b).unwrap();
        println!("  r = {r}, j = {j}, b = {b}: {:.15}", incomplete_beta(req).unwrap());
    }
}
