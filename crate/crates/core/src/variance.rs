//! Number variance of the count `N_r` in a centered disc, for the Ginibre-type
//! process (two routes) and the hyperbolic-type process (two routes), the
//! `r -> 1` asymptotic constant, and the flat-limit check that ties them together.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    euclidean_lens_complement_area, hyperbolic_disc_area, hyperbolic_lens_integral,
    hyperbolic_lens_integral_transformed, LensIntegralResult,
};
use crate::kernels::{f_profile_from_complement, EuclideanLevel, HyperbolicLevel};
use crate::quadrature::{integrate, Estimate};
use crate::specfun::{jacobi_zero_beta, laguerre};

pub use crate::quadrature::QuadratureConfig;

/// Which formula produced a variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Laguerre-weighted integral over the convolution variable.
    Shirai,
    /// Radial integral of the Euclidean lens area.
    Geometric,
    /// Radial integral of the hyperbolic lens integral.
    Int1,
    /// Same radial integral with the transformed lens integral.
    Int3,
    /// `Σ p_j - Σ p_j^2` over the Bernoulli profile.
    Series,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Shirai => "shirai",
            Route::Geometric => "geometric",
            Route::Int1 => "int1",
            Route::Int3 => "int3",
            Route::Series => "series",
        }
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceResult {
    pub value: f64,
    pub error_estimate: f64,
    pub route: Route,
}

impl VarianceResult {
    fn from_estimate(est: Estimate, route: Route) -> Self {
        VarianceResult {
            value: est.value.max(0.0),
            error_estimate: est.error,
            route,
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("disc radius must be positive and finite, got {r}")));
    }
    Ok(())
}

/// Smallest `T >= start` with `∫_T^∞ L_n(t)^2 e^{-t} dt <= 2 (1+T)^{2n} e^{-T} <= target`.
/// Uses `|L_n(t)| <= (1+t)^n`; the factor 2 holds once `T >= 4n`.
fn laguerre_tail_cutoff(n: usize, start: f64, target: f64) -> f64 {
    let mut t = start.max(4.0 * n as f64).max(1.0);
    let bound = |t: f64| (2.0f64).ln() + 2.0 * n as f64 * (1.0 + t).ln() - t;
    while bound(t) > target.ln() {
        t += 1.0;
    }
    t
}

fn laguerre_tail_bound(n: usize, t: f64) -> f64 {
    2.0 * (1.0 + t).powf(2.0 * n as f64) * (-t).exp()
}

/// `(r/π) ∫_0^∞ L_n(t)^2 e^{-t} J(t) dt` with
/// `J(t) = ∫_0^{t ∧ 4r^2} sqrt(1 - x/4r^2) dx / sqrt(x) = 2rθ + r sin 2θ`, `θ = asin(sqrt(t ∧ 4r^2) / 2r)`.
///
/// On `[0, 4r^2]` the outer variable is `t = 4r^2 sin^2 θ`, which makes the integrand
/// smooth; beyond, `J = πr`. The range is cut where the Laguerre tail bound falls
/// below a tenth of `abs_tol`.
pub fn variance_euclidean_shirai(level: EuclideanLevel, r: f64, quad: &QuadratureConfig) -> Result<VarianceResult> {
    check_radius(r)?;
    let n = level.n();
    let four_r2 = 4.0 * r * r;
    let target = 0.1 * quad.abs_tol() / (r * r);
    let t_max = laguerre_tail_cutoff(n, 40.0, target);

    let theta_max = if four_r2 <= t_max { 0.5 * PI } else { (t_max.sqrt() / (2.0 * r)).asin() };
    let inner = integrate(
        |theta: f64| {
            let (s, c) = theta.sin_cos();
            let t = four_r2 * s * s;
            let l = laguerre(n, t);
            let j = 2.0 * r * theta + 2.0 * r * s * c;
            l * l * (-t).exp() * j * 2.0 * four_r2 * s * c
        },
        0.0,
        theta_max,
        quad,
        "Euclidean variance (convolution route)",
    )?
    .scale(r / PI);

    let outer = if four_r2 < t_max {
        integrate(
            |t: f64| {
                let l = laguerre(n, t);
                l * l * (-t).exp()
            },
            four_r2,
            t_max,
            quad,
            "Euclidean variance tail (convolution route)",
        )?
        .scale(r * r)
    } else {
        Estimate::ZERO
    };
    let mut est = inner + outer;
    est.error += r * r * laguerre_tail_bound(n, t_max.max(four_r2));
    Ok(VarianceResult::from_estimate(est, Route::Shirai))
}

/// `(2/π) ∫_0^∞ ρ e^{-ρ^2} L_n(ρ^2)^2 Area(D_r^c ∩ D_r(ρ)) dρ`.
///
/// `ρ = 2r sin φ` on `[0, 2r]`; beyond, the area is `π r^2` and the radial range stops
/// at `max(2r, 1) + 8` or later if the tail bound requires.
pub fn variance_euclidean_geometric(
    level: EuclideanLevel,
    r: f64,
    quad: &QuadratureConfig,
) -> Result<VarianceResult> {
    check_radius(r)?;
    let n = level.n();
    let target = 0.1 * quad.abs_tol() / (r * r);
    let rho_cut = (2.0 * r).max(1.0) + 8.0;
    let rho_max = rho_cut.max(laguerre_tail_cutoff(n, rho_cut * rho_cut, target).sqrt());
    let two_r = 2.0 * r;

    let phi_max = if two_r <= rho_max { 0.5 * PI } else { (rho_max / two_r).asin() };
    let inner = integrate(
        |phi: f64| {
            let (s, c) = phi.sin_cos();
            let rho = two_r * s;
            let t = rho * rho;
            let l = laguerre(n, t);
            rho * (-t).exp() * l * l * euclidean_lens_complement_area(r, rho) * two_r * c
        },
        0.0,
        phi_max,
        quad,
        "Euclidean variance (lens-area route)",
    )?
    .scale(2.0 / PI);

    let outer = if two_r < rho_max {
        integrate(
            |rho: f64| {
                let t = rho * rho;
                let l = laguerre(n, t);
                rho * (-t).exp() * l * l
            },
            two_r,
            rho_max,
            quad,
            "Euclidean variance tail (lens-area route)",
        )?
        .scale(2.0 * r * r)
    } else {
        Estimate::ZERO
    };
    let mut est = inner + outer;
    est.error += r * r * laguerre_tail_bound(n, (rho_max * rho_max).max(two_r * two_r));
    Ok(VarianceResult::from_estimate(est, Route::Geometric))
}

fn check_hyperbolic_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("disc radius must lie in (0,1), got {r}")));
    }
    Ok(())
}

/// `∫_{ρ*}^1 ρ (1-ρ^2)^{-2} f(ρ) dρ` with `w* = 1 - ρ*^2`.
///
/// In `w = 1 - ρ^2` this is `(1/2) (β/π)^2 ∫_0^{w*} w^{β-1} P_m^{(0,β)}(2w-1)^2 dw`,
/// and `w = w* y^{1/β}` removes the endpoint power.
fn profile_tail_mass(level: HyperbolicLevel, w_star: f64, quad: &QuadratureConfig) -> Result<Estimate> {
    let beta = level.beta();
    let m = level.m();
    let prefactor = 0.5 * (beta / PI).powi(2) * w_star.powf(beta) / beta;
    if m == 0 {
        return Ok(Estimate {
            value: prefactor,
            error: 0.0,
            evaluations: 0,
        });
    }
    Ok(integrate(
        |y: f64| {
            let w = w_star * y.powf(1.0 / beta);
            let p = jacobi_zero_beta(m, beta, 2.0 * w - 1.0);
            p * p
        },
        0.0,
        1.0,
        quad,
        "hyperbolic variance tail",
    )?
    .scale(prefactor))
}

fn variance_hyperbolic_with<L>(
    level: HyperbolicLevel,
    r: f64,
    quad: &QuadratureConfig,
    lens: L,
    route: Route,
) -> Result<VarianceResult>
where
    L: Fn(f64, f64, &QuadratureConfig) -> Result<LensIntegralResult>,
{
    check_hyperbolic_radius(r)?;
    // 4π = (leading 2 of the lens formula) x (angular 2π); the lens integral is un-doubled.
    const PREFACTOR: f64 = 4.0 * PI;
    let inner_cfg = quad.inner();
    let u_star = 2.0 * r.atanh();

    // Beyond ρ* = tanh(u*) the image disc misses D_r and the lens integral is half its area.
    let full_lens = 0.5 * hyperbolic_disc_area(r);
    let w_star = {
        let s = 1.0 / u_star.cosh();
        s * s
    };
    let tail = profile_tail_mass(level, w_star, quad)?.scale(full_lens);

    let mut failure: Option<Error> = None;
    let mut worst_inner_rel = 0.0f64;
    let head = integrate(
        |u: f64| {
            if failure.is_some() || u == 0.0 {
                return 0.0;
            }
            let sech = 1.0 / u.cosh();
            let one_minus_rho2 = sech * sech;
            let rho = u.tanh();
            match lens(r, rho, &inner_cfg) {
                Ok(res) => {
                    if res.value != 0.0 {
                        worst_inner_rel = worst_inner_rel.max(res.error_estimate / res.value.abs());
                    }
                    // ρ (1-ρ^2)^{-2} dρ = sinh u cosh u du
                    u.sinh() * u.cosh() * f_profile_from_complement(one_minus_rho2, level) * res.value
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        u_star,
        quad,
        "hyperbolic variance",
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut est = head + tail;
    est.error += worst_inner_rel * head.value.abs();
    Ok(VarianceResult::from_estimate(est.scale(PREFACTOR), route))
}

/// `4π ∫_0^1 ρ (1-ρ^2)^{-2} f_{ν,m}(ρ) I(ρ, r) dρ` with `I` the un-doubled hyperbolic
/// lens integral.
///
/// The radial variable is `ρ = tanh u`. The range splits at `ρ* = 2r / (1 + r^2)`:
/// beyond it `I` is the constant `π r^2 / (2(1 - r^2))` and the remaining profile mass
/// is integrated in closed variables without truncation.
pub fn variance_hyperbolic(level: HyperbolicLevel, r: f64, quad: &QuadratureConfig) -> Result<VarianceResult> {
    variance_hyperbolic_with(level, r, quad, hyperbolic_lens_integral, Route::Int1)
}

/// [`variance_hyperbolic`] with the lens integral taken through
/// [`hyperbolic_lens_integral_transformed`].
pub fn variance_hyperbolic_via_transformed(
    level: HyperbolicLevel,
    r: f64,
    quad: &QuadratureConfig,
) -> Result<VarianceResult> {
    variance_hyperbolic_with(level, r, quad, hyperbolic_lens_integral_transformed, Route::Int3)
}

/// Constant of the area law `(1 - r^2) V_m^ν(N_r) -> C_m^ν` as `r -> 1`:
/// `C = 2π ∫_0^1 ρ (1-ρ^2)^{-2} f_{ν,m}(ρ) arccos(1 - 2ρ^2) dρ`.
///
/// Evaluated as `(β/π) ∫_0^1 P_m^{(0,β)}(2w - 1)^2 arccos(2w - 1) dy` with `w = y^{1/β}`,
/// `w = 1 - ρ^2`.
pub fn asymptotic_constant(level: HyperbolicLevel, quad: &QuadratureConfig) -> Result<f64> {
    Ok(asymptotic_constant_estimate(level, quad, false)?.value)
}

/// The same constant from `π - 2 arccos(ρ)` in place of `arccos(1 - 2ρ^2)`.
pub fn asymptotic_constant_half_angle(level: HyperbolicLevel, quad: &QuadratureConfig) -> Result<f64> {
    Ok(asymptotic_constant_estimate(level, quad, true)?.value)
}

fn asymptotic_constant_estimate(level: HyperbolicLevel, quad: &QuadratureConfig, half_angle: bool) -> Result<Estimate> {
    let beta = level.beta();
    let m = level.m();
    Ok(integrate(
        |y: f64| {
            let w = y.powf(1.0 / beta);
            let p = jacobi_zero_beta(m, beta, 2.0 * w - 1.0);
            let angle = if half_angle {
                let rho = (1.0 - w).max(0.0).sqrt();
                PI - 2.0 * rho.acos()
            } else {
                2.0 * (1.0 - w).max(0.0).sqrt().atan2(w.sqrt())
            };
            p * p * angle
        },
        0.0,
        1.0,
        quad,
        "asymptotic constant",
    )?
    .scale(beta / PI))
}

/// The upper bound `2(ν - m) - 1` on the asymptotic constant.
pub fn asymptotic_constant_bound(level: HyperbolicLevel) -> f64 {
    level.beta()
}

/// One row of the flat-limit table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionRow {
    pub big_r: f64,
    /// `V_m^{R^2/2}(N_{r/R})`
    pub hyperbolic_variance: f64,
    /// `R^2 V_m^{R^2/2}(N_{r/R})`
    pub scaled_variance: f64,
    /// `V_m(N_r)` for the Ginibre-type process
    pub euclidean_target: f64,
    /// `scaled_variance / euclidean_target`
    pub ratio: f64,
    /// `hyperbolic_variance / euclidean_target`
    pub unscaled_ratio: f64,
}

/// `R^2 V_m^{R^2/2}(N_{r/R})` against the Euclidean variance at level `m` and radius `r`.
///
/// Both counts have mean close to `r^2`, so it is the unscaled variance
/// `V_m^{R^2/2}(N_{r/R})` that tends to `V_m(N_r)`, with an `O(R^{-2})` gap; the
/// scaled column grows like `R^2`. Both ratios are reported.
pub fn contraction_check(m: usize, r: f64, big_r_values: &[f64], quad: &QuadratureConfig) -> Result<Vec<ContractionRow>> {
    check_radius(r)?;
    let target = variance_euclidean_geometric(EuclideanLevel::new(m), r, quad)?.value;
    big_r_values
        .iter()
        .map(|&big_r| {
            if !(big_r > 1.0 && big_r.is_finite()) {
                return Err(Error::domain(format!("contraction scale R must exceed 1, got {big_r}")));
            }
            if !(r / big_r < 1.0) {
                return Err(Error::domain(format!("r/R must be below 1, got {}", r / big_r)));
            }
            let level = HyperbolicLevel::new(0.5 * big_r * big_r, m)?;
            let v = variance_hyperbolic(level, r / big_r, quad)?.value;
            let scaled = big_r * big_r * v;
            Ok(ContractionRow {
                big_r,
                hyperbolic_variance: v,
                scaled_variance: scaled,
                euclidean_target: target,
                ratio: scaled / target,
                unscaled_ratio: v / target,
            })
        })
        .collect()
}
