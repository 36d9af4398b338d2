//! Möbius maps of the unit disc, image discs and lens areas.
//!
//! ```bash
//! cargo run --release --example disc_geometry
//! ```

use landau_dpp::geometry::{
    euclidean_lens_complement_area, hyperbolic_disc_area, hyperbolic_distance, hyperbolic_lens_integral,
    hyperbolic_lens_integral_transformed, image_disc, mobius,
};
use landau_dpp::{ComplexPoint, QuadratureConfig};

fn main() {
    let w = ComplexPoint::new(0.4, -0.3);
    let z = ComplexPoint::new(-0.2, 0.5);
    let y = ComplexPoint::new(0.1, 0.1);
    let gz = mobius(w, 0.0, z).unwrap();
    println!("g_w(z) = {gz:.6}, g_w(g_w(z)) = {:.6}", mobius(w, 0.0, gz).unwrap());
    println!(
        "d(z, y) = {:.12}, d(g_w z, g_w y) = {:.12}",
        hyperbolic_distance(z, y).unwrap(),
        hyperbolic_distance(gz, mobius(w, 0.0, y).unwrap()).unwrap()
    );

    let (zm, r) = (0.6, 0.5);
    let p = image_disc(zm, r).unwrap();
    println!("\nimage of D_{r} under g_z, |z| = {zm}: |C| = {:.6}, R = {:.6}", p.center_modulus, p.radius);
    println!("  A = {:.6}, B = {:.6}, E = {:.6}, F = {:.6}", p.a, p.b, p.e, p.f);
    println!("  H = {:.6}, U = {:.6}, V = {:.6}", p.h, p.u, p.v);

    let cfg = QuadratureConfig::default();
    println!("\nlens integral (half the hyperbolic area of D_r^c ∩ g_z D_r), r = {r}");
    for zm in [0.1, 0.3, 0.6, 0.79, 0.9] {
        let a = hyperbolic_lens_integral(r, zm, &cfg).unwrap();
        let b = hyperbolic_lens_integral_transformed(r, zm, &cfg).unwrap();
        println!("  |z| = {zm:<4}: direct {:.12}  transformed {:.12}", a.value, b.value);
    }
    println!("  half disc area: {:.12}", 0.5 * hyperbolic_disc_area(r));

    println!("\nEuclidean area of D_1^c ∩ D_1(z)");
    for zm in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
        println!("  |z| = {zm}: {:.12}", euclidean_lens_complement_area(1.0, zm));
    }
}
