//! Correlation kernels of the Ginibre-type process on the plane and of the
//! hyperbolic-type process on the unit disc, plus the radial profile `f_{ν,m}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ComplexPoint;
use crate::specfun::{jacobi_zero_beta, laguerre};

/// Euclidean Landau level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclideanLevel {
    n: usize,
}

impl EuclideanLevel {
    pub fn new(n: usize) -> Self {
        EuclideanLevel { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Hyperbolic Landau level `(ν, m)`: magnetic strength `ν > 1/2` and level index
/// `0 <= m <= ⌊ν - 1/2⌋` with `2(ν - m) - 1 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicLevel {
    nu: f64,
    m: usize,
}

impl HyperbolicLevel {
    pub fn new(nu: f64, m: usize) -> Result<Self> {
        if !(nu > 0.5 && nu.is_finite()) {
            return Err(Error::domain(format!("magnetic strength must satisfy nu > 1/2, got {nu}")));
        }
        let max_m = (nu - 0.5).floor();
        if m as f64 > max_m {
            return Err(Error::domain(format!(
                "level index m = {m} exceeds floor(nu - 1/2) = {max_m} for nu = {nu}"
            )));
        }
        let beta = 2.0 * (nu - m as f64) - 1.0;
        if !(beta > 0.0) {
            return Err(Error::domain(format!("2(nu - m) - 1 must be positive, got {beta}")));
        }
        Ok(HyperbolicLevel { nu, m })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `2(ν - m) - 1`, the Jacobi parameter and the kernel's normalising numerator.
    pub fn beta(&self) -> f64 {
        2.0 * (self.nu - self.m as f64) - 1.0
    }

    /// Level energy `4m(2ν - m - 1)`.
    pub fn energy(&self) -> f64 {
        let m = self.m as f64;
        4.0 * m * (2.0 * self.nu - m - 1.0)
    }
}

/// `|K_n(z,w)|^2 e^{-|z|^2} e^{-|w|^2} / π^2 = e^{-|z-w|^2} L_n(|z-w|^2)^2 / π^2`.
pub fn fock_kernel_sq_weighted(level: EuclideanLevel, z: ComplexPoint, w: ComplexPoint) -> f64 {
    let d2 = (z - w).norm_sqr();
    let l = laguerre(level.n, d2);
    (-d2).exp() * l * l / (PI * PI)
}

/// The reproducing kernel `G_m^ν(z, w)`.
///
/// `(1 - z conj(w))^{-2ν}` takes the principal branch; `Re(1 - z conj(w)) > 0` on the
/// disc so the cut is never crossed.
pub fn hyperbolic_kernel(level: HyperbolicLevel, z: ComplexPoint, w: ComplexPoint) -> Result<Complex64> {
    for (p, name) in [(z, "z"), (w, "w")] {
        if !(p.norm() < 1.0) {
            return Err(Error::domain(format!("{name} must lie in the open unit disc")));
        }
    }
    let beta = level.beta();
    let one_minus = Complex64::new(1.0, 0.0) - z * w.conj();
    let cosh2 = one_minus.norm_sqr() / ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()));
    let jac = jacobi_zero_beta(level.m, beta, 2.0 / cosh2 - 1.0);
    let power = one_minus.powf(-2.0 * level.nu);
    Ok(power * (beta / PI * cosh2.powi(level.m as i32) * jac))
}

/// `f_{ν,m}` as a function of `ρ = tanh d(z, 0) = |z|`.
pub fn f_profile(level: HyperbolicLevel, rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::domain(format!("rho must lie in [0,1), got {rho}")));
    }
    Ok(f_profile_from_complement((1.0 - rho) * (1.0 + rho), level))
}

/// `f_{ν,m}` from `1 - ρ^2` directly, for callers that hold it without cancellation
/// (e.g. `sech^2 u` when `ρ = tanh u` is numerically 1).
pub(crate) fn f_profile_from_complement(one_minus_rho2: f64, level: HyperbolicLevel) -> f64 {
    let beta = level.beta();
    let x = 2.0 * one_minus_rho2 - 1.0;
    let g = beta / PI * one_minus_rho2.powf(level.nu - level.m as f64) * jacobi_zero_beta(level.m, beta, x);
    g * g
}

/// `f_{ν,m}` as a function of the hyperbolic distance `d`.
pub fn f_profile_at_distance(level: HyperbolicLevel, d: f64) -> f64 {
    let sech = 1.0 / d.cosh();
    f_profile_from_complement(sech * sech, level)
}
