//! Oracles shared by the integration tests. None of them reuse the library's
//! lens routines.
#![allow(dead_code)]

use std::f64::consts::PI;

use landau_dpp::quadrature::{integrate, QuadratureConfig, Scheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Area of `D_r^c ∩ D_r(z)` by jittered-grid sampling of the square around `D_r(z)`.
pub fn euclidean_lens_monte_carlo(r: f64, z: f64, cells_per_side: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 2.0 * r / cells_per_side as f64;
    let mut hits = 0u64;
    for i in 0..cells_per_side {
        for j in 0..cells_per_side {
            let x = z - r + h * (i as f64 + rng.random::<f64>());
            let y = -r + h * (j as f64 + rng.random::<f64>());
            let in_moved = (x - z).powi(2) + y * y < r * r;
            let outside_centered = x * x + y * y >= r * r;
            if in_moved && outside_centered {
                hits += 1;
            }
        }
    }
    hits as f64 * h * h
}

fn oracle_quadrature() -> QuadratureConfig {
    QuadratureConfig::new(Scheme::TanhSinh, 1e-12, 1e-15, 1000, 64).unwrap()
}

/// Half the hyperbolic area of `D_r^c ∩ D(C, R)` for the image disc of `D_r` under
/// `g_z`, in polar coordinates centered at `C` (placed on the positive real axis).
///
/// For each direction ψ the ray `C + ρ e^{iψ}`, `ρ ∈ [0, R]`, is split where it
/// crosses `|w| = r`; the radial integral of `ρ / (1 - |w|^2)^2` is done by
/// Gauss–Kronrod and the ψ integral by tanh–sinh between the directions where the
/// crossing pattern changes.
pub fn hyperbolic_lens_polar_oracle(r: f64, z: f64) -> f64 {
    let c = (1.0 - r * r) * z / (1.0 - z * z * r * r);
    let big_r = (1.0 - z * z) * r / (1.0 - z * z * r * r);
    let radial = QuadratureConfig::new(Scheme::AdaptiveGaussKronrod, 1e-13, 1e-15, 1000, 64).unwrap();

    let segments = |psi: f64| -> Vec<(f64, f64)> {
        let disc = r * r - c * c * psi.sin().powi(2);
        if disc <= 0.0 {
            return vec![(0.0, big_r)];
        }
        let lo = -c * psi.cos() - disc.sqrt();
        let hi = -c * psi.cos() + disc.sqrt();
        let mut out = Vec::new();
        if lo > 0.0 {
            out.push((0.0, lo.min(big_r)));
        }
        if hi < big_r {
            out.push((hi.max(0.0), big_r));
        }
        out.into_iter().filter(|(a, b)| b > a).collect()
    };
    let inner = |psi: f64| -> f64 {
        let cos = psi.cos();
        segments(psi)
            .into_iter()
            .map(|(a, b)| {
                integrate(
                    |rho: f64| {
                        let w2 = c * c + 2.0 * c * rho * cos + rho * rho;
                        rho / (1.0 - w2).powi(2)
                    },
                    a,
                    b,
                    &radial,
                    "oracle radial",
                )
                .unwrap()
                .value
            })
            .sum()
    };

    // directions where the segment structure changes
    let events = |psi: f64| -> [f64; 4] {
        let disc = r * r - c * c * psi.sin().powi(2);
        let s = disc.max(0.0).sqrt();
        [disc, -c * psi.cos() + s - big_r, -c * psi.cos() - s - big_r, -c * psi.cos() - s]
    };
    let mut breaks = vec![0.0, PI];
    let grid = 4000;
    for k in 0..grid {
        let (a, b) = (PI * k as f64 / grid as f64, PI * (k + 1) as f64 / grid as f64);
        for e in 0..4 {
            let (fa, fb) = (events(a)[e], events(b)[e]);
            if fa.signum() != fb.signum() {
                let (mut x0, mut x1) = (a, b);
                for _ in 0..200 {
                    let mid = 0.5 * (x0 + x1);
                    if events(mid)[e].signum() == fa.signum() {
                        x0 = mid;
                    } else {
                        x1 = mid;
                    }
                }
                breaks.push(0.5 * (x0 + x1));
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    let outer = oracle_quadrature();
    let half_turn: f64 = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| integrate(&inner, w[0], w[1], &outer, "oracle angular").unwrap().value)
        .sum();
    // the full turn is twice the half turn; the lens integral is half the area
    half_turn
}
