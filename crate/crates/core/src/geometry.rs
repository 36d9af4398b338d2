//! Euclidean and Poincaré-disc geometry.
//!
//! The hyperbolic area measure throughout is `dz / (1 - |z|^2)^2`, and the
//! hyperbolic distance is normalised so that `tanh d(z, w) = |z - w| / |1 - z conj(w)|`.
//!
//! The variance computations reduce to the hyperbolic area of a *lens*: the part of
//! the Möbius image of a centered disc `D_r` that lies outside `D_r`. Two routes are
//! provided, the direct polar integral ([`hyperbolic_lens_integral`]) and the route
//! obtained after an integration by parts and a change of variables
//! ([`hyperbolic_lens_integral_transformed`]). Both return the *un-doubled* integral,
//! i.e. half of the hyperbolic lens area.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate, QuadratureConfig};

/// A point of the complex plane (or of the unit disc).
pub type ComplexPoint = Complex64;

/// Window inside which an arccos argument that leaves `[-1, 1]` is clamped back.
pub const ARCCOS_CLAMP_WINDOW: f64 = 1e-12;

/// Upper lens radius beyond which the radial variable is switched to `t = tanh(u)`.
const TANH_SWITCH: f64 = 0.999;

/// A Euclidean disc by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: ComplexPoint,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: ComplexPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::domain(format!("disc needs a finite center and radius > 0, got radius {radius}")));
        }
        Ok(Disc { center, radius })
    }

    pub fn centered(radius: f64) -> Result<Self> {
        Disc::new(ComplexPoint::new(0.0, 0.0), radius)
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Whether the closed disc fits inside the open unit disc.
    pub fn is_hyperbolic(&self) -> bool {
        self.center.norm() + self.radius < 1.0
    }
}

/// The image `D(C_{z,r}, R_{z,r})` of `D_r` under the involution `g_z`, together with
/// the auxiliary quantities of the transformed lens integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageDiscParams {
    pub z_modulus: f64,
    pub r: f64,
    /// `|C|`
    pub center_modulus: f64,
    /// `R`
    pub radius: f64,
    /// `|C|^2 + R^2`
    pub a: f64,
    /// `R^2 - |C|^2`
    pub b: f64,
    /// `(R - |C|)^2`
    pub e: f64,
    /// `(R + |C|)^2`
    pub f: f64,
    /// `(F - r^2) / (F - E)`
    pub h: f64,
    /// `(F - E) / (1 - F)`
    pub u: f64,
    /// `(F - E) / F`
    pub v: f64,
    /// `F - E`, from its factored form
    pub f_minus_e: f64,
    /// `1 - F`, from its factored form
    pub one_minus_f: f64,
}

impl ImageDiscParams {
    /// Complex center `C_{z,r}` for a point `z` of the given argument.
    pub fn center(&self, arg: f64) -> ComplexPoint {
        ComplexPoint::from_polar(self.center_modulus, arg)
    }
}

fn check_unit_disc(z: ComplexPoint, name: &str) -> Result<()> {
    let m = z.norm();
    if !(m < 1.0) {
        return Err(Error::domain(format!("{name} must lie in the open unit disc, |{name}| = {m}")));
    }
    Ok(())
}

/// `g_{w,theta}(z) = e^{i theta} (w - z) / (1 - conj(w) z)`.
pub fn mobius(w: ComplexPoint, theta: f64, z: ComplexPoint) -> Result<ComplexPoint> {
    check_unit_disc(w, "w")?;
    check_unit_disc(z, "z")?;
    let rot = ComplexPoint::from_polar(1.0, theta);
    Ok(rot * (w - z) / (1.0 - w.conj() * z))
}

/// Hyperbolic distance, `atanh(|z - w| / |1 - z conj(w)|)`.
pub fn hyperbolic_distance(z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
    check_unit_disc(z, "z")?;
    check_unit_disc(w, "w")?;
    let ratio = (z - w).norm() / (1.0 - z * w.conj()).norm();
    Ok(ratio.min(1.0).atanh())
}

fn check_lens_inputs(z_modulus: f64, r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("radius r must lie in (0,1), got {r}")));
    }
    if !(0.0..1.0).contains(&z_modulus) {
        return Err(Error::domain(format!("|z| must lie in [0,1), got {z_modulus}")));
    }
    Ok(())
}

/// Image disc of `D_r` under `g_{|z|}` and the derived quantities `A, B, E, F, H, U, V`.
///
/// Differences such as `F - E` and `1 - F` are taken from their factored forms.
/// At `|z| = 0`, `H` is its limit `1/2` and `U = V = 0`.
pub fn image_disc(z_modulus: f64, r: f64) -> Result<ImageDiscParams> {
    check_lens_inputs(z_modulus, r)?;
    let z = z_modulus;
    let d = 1.0 - z * z * r * r;
    let one_minus_z2 = (1.0 - z) * (1.0 + z);
    let one_minus_r2 = (1.0 - r) * (1.0 + r);
    let center_modulus = one_minus_r2 * z / d;
    let radius = one_minus_z2 * r / d;
    let inner = (z - r) / (1.0 - z * r);
    let outer = (z + r) / (1.0 + z * r);
    let f_minus_e = 4.0 * z * one_minus_z2 * r * one_minus_r2 / (d * d);
    let one_minus_f = one_minus_z2 * one_minus_r2 / ((1.0 + z * r) * (1.0 + z * r));
    let one_minus_zr = 1.0 - z * r;
    Ok(ImageDiscParams {
        z_modulus,
        r,
        center_modulus,
        radius,
        a: center_modulus * center_modulus + radius * radius,
        b: (r - z) * (r + z) / d,
        e: inner * inner,
        f: outer * outer,
        h: (2.0 * r + z * (1.0 + r * r)) * one_minus_zr * one_minus_zr / (4.0 * r * one_minus_z2),
        u: 4.0 * z * r / (one_minus_zr * one_minus_zr),
        v: 4.0 * z * one_minus_z2 * r * one_minus_r2 / ((z + r) * (z + r) * one_minus_zr * one_minus_zr),
        f_minus_e,
        one_minus_f,
    })
}

/// Euclidean area of `D_r^c ∩ D_r(z)`:
/// `π r^2 - 2r^2 arccos(|z|/2r) + (|z|/2) sqrt(4r^2 - |z|^2)` for `|z| < 2r`, else `π r^2`.
///
/// Evaluated as `π r^2 - r^2 (φ - sin φ)` with `φ = 2 arccos(|z|/2r)`, using a series
/// for small `φ` so the function is continuous to rounding at `|z| = 2r`.
pub fn euclidean_lens_complement_area(r: f64, z_modulus: f64) -> f64 {
    if z_modulus >= 2.0 * r {
        return PI * r * r;
    }
    let x = z_modulus / (2.0 * r);
    let one_minus_x = (2.0 * r - z_modulus) / (2.0 * r);
    let half_angle = (one_minus_x * (1.0 + x)).sqrt().atan2(x);
    PI * r * r - r * r * phi_minus_sin(2.0 * half_angle)
}

fn phi_minus_sin(phi: f64) -> f64 {
    if phi < 0.1 {
        let p2 = phi * phi;
        phi * p2 / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0 * (1.0 - p2 / 72.0)))
    } else {
        phi - phi.sin()
    }
}

/// Hyperbolic area of the centered disc `D_r`, `pi r^2 / (1 - r^2)`.
/// Möbius invariance makes this the area of every image disc `g_w D_r`.
pub fn hyperbolic_disc_area(r: f64) -> f64 {
    PI * r * r / ((1.0 - r) * (1.0 + r))
}

/// Pulls `x` back into `[-1, 1]` if it overshoots by less than [`ARCCOS_CLAMP_WINDOW`].
pub fn clamp_unit(x: f64) -> Result<f64> {
    if (-1.0..=1.0).contains(&x) {
        Ok(x)
    } else if x.abs() <= 1.0 + ARCCOS_CLAMP_WINDOW {
        Ok(x.clamp(-1.0, 1.0))
    } else {
        Err(Error::domain(format!("arccos argument {x} outside [-1, 1]")))
    }
}

/// Clamps a quantity that is non-negative analytically.
fn clamp_nonnegative(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -ARCCOS_CLAMP_WINDOW {
        Ok(0.0)
    } else {
        Err(Error::domain(format!("arccos argument leaves [-1, 1] by {}", -x)))
    }
}

/// `arccos(x)` from `1 - x` and `1 + x`, each supplied without cancellation.
fn arccos_from_gaps(one_minus_x: f64, one_plus_x: f64) -> Result<f64> {
    let lo = clamp_nonnegative(one_minus_x)?;
    let hi = clamp_nonnegative(one_plus_x)?;
    Ok(2.0 * lo.sqrt().atan2(hi.sqrt()))
}

/// Value and error estimate of a lens integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LensIntegralResult {
    pub value: f64,
    pub error_estimate: f64,
}

impl From<Estimate> for LensIntegralResult {
    fn from(e: Estimate) -> Self {
        LensIntegralResult {
            value: e.value,
            error_estimate: e.error,
        }
    }
}

impl LensIntegralResult {
    const ZERO: LensIntegralResult = LensIntegralResult {
        value: 0.0,
        error_estimate: 0.0,
    };
}

/// Whether the lower radial bound of the lens is the inner tangent point of the image
/// disc (`|z| >= 2r / (1 + r^2)`) rather than `r`. In that case the whole image disc
/// lies outside `D_r`.
pub fn lens_is_full_disc(z_modulus: f64, r: f64) -> bool {
    z_modulus * (1.0 + r * r) >= 2.0 * r
}

/// `\int arccos((t^2 + |C|^2 - R^2) / (2 t |C|)) t dt / (1 - t^2)^2` over
/// `[r ∨ ||z| - r| / (1 - |z| r), (|z| + r) / (1 + |z| r)]`.
///
/// This is half the hyperbolic area of `D_r^c ∩ D(C_{z,r}, R_{z,r})`. The radial
/// variable is mapped by `t = lo + (up - lo) sin^2(θ/2)` so that the square-root
/// behaviour of the arccos at tangent endpoints becomes smooth; when the upper bound
/// exceeds 0.999 the same map is applied to `u = atanh(t)` instead.
pub fn hyperbolic_lens_integral(r: f64, z_modulus: f64, quad: &QuadratureConfig) -> Result<LensIntegralResult> {
    check_lens_inputs(z_modulus, r)?;
    if z_modulus == 0.0 {
        return Ok(LensIntegralResult::ZERO);
    }
    let params = image_disc(z_modulus, r)?;
    let z = z_modulus;
    let c2 = 2.0 * params.center_modulus;
    // |C| - R, signed
    let signed_gap = (z - r) / (1.0 - z * r);
    let full = lens_is_full_disc(z, r);
    let up = (z + r) / (1.0 + z * r);
    let lo = if full { signed_gap } else { r };
    if lo >= up {
        return Ok(LensIntegralResult::ZERO);
    }

    let est = if up <= TANH_SWITCH {
        let width = up - lo;
        let offset = if full { 0.0 } else { r - signed_gap };
        let one_minus_up = (1.0 - z) * (1.0 - r) / (1.0 + z * r);
        let mut failure = None;
        let est = integrate(
            |theta: f64| {
                let (s, c) = (0.5 * theta).sin_cos();
                let gap_lo = width * s * s;
                let gap_hi = width * c * c;
                let t = lo + gap_lo;
                let denom = c2 * t;
                let one_minus_x = gap_hi * (gap_lo + offset) / denom;
                let one_plus_x = (t + signed_gap) * (t + up) / denom;
                let angle = match arccos_from_gaps(one_minus_x, one_plus_x) {
                    Ok(a) => a,
                    Err(e) => {
                        failure.get_or_insert(e);
                        return 0.0;
                    }
                };
                let one_minus_t = one_minus_up + gap_hi;
                let w = t / (one_minus_t * one_minus_t * (1.0 + t) * (1.0 + t));
                angle * w * 0.5 * width * theta.sin()
            },
            0.0,
            PI,
            quad,
            "hyperbolic lens integral",
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        est
    } else {
        let (ua, ub) = (r.atanh(), z.atanh());
        let shift = ub - ua; // atanh(|C| - R)
        let u_hi = ub + ua;
        let u_lo = if full { shift } else { ua };
        let width = u_hi - u_lo;
        let offset = u_lo - shift;
        let (ch_hi, ch_shift) = (u_hi.cosh(), shift.cosh());
        let mut failure = None;
        let est = integrate(
            |theta: f64| {
                let (s, c) = (0.5 * theta).sin_cos();
                let gap_lo = width * s * s;
                let gap_hi = width * c * c;
                let u = u_lo + gap_lo;
                let (sh, chu) = (u.sinh(), u.cosh());
                let t = sh / chu;
                let denom = c2 * t;
                let up_minus_t = gap_hi.sinh() / (ch_hi * chu);
                let t_minus_shift = (gap_lo + offset).sinh() / (chu * ch_shift);
                let t_plus_shift = (u + shift).sinh() / (chu * ch_shift);
                let one_minus_x = up_minus_t * t_minus_shift / denom;
                let one_plus_x = t_plus_shift * (t + up) / denom;
                let angle = match arccos_from_gaps(one_minus_x, one_plus_x) {
                    Ok(a) => a,
                    Err(e) => {
                        failure.get_or_insert(e);
                        return 0.0;
                    }
                };
                angle * sh * chu * 0.5 * width * theta.sin()
            },
            0.0,
            PI,
            quad,
            "hyperbolic lens integral (tanh variable)",
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        est
    };
    Ok(est.into())
}

/// The lens integral after integration by parts and the change of variables
/// `t -> (F - t^2) / (F - E)`:
///
/// `(1/2) [ (1/2) \int_0^{1∧H} (B/F (1 - V t)^{-1} + (1+B)/(1-F) (1 + U t)^{-1}) dt / sqrt(t(1-t))
///   - (1 - r^2)^{-1} arccos(|z| (1 + r^2) / (2r)) 1{|z| < 2r/(1+r^2)} ]`.
///
/// The bracket is the doubled lens integral, hence the outer `1/2`. The
/// `sqrt(t(1-t))` singularities are removed with `t = sin^2(φ)`.
pub fn hyperbolic_lens_integral_transformed(
    r: f64,
    z_modulus: f64,
    quad: &QuadratureConfig,
) -> Result<LensIntegralResult> {
    check_lens_inputs(z_modulus, r)?;
    if z_modulus == 0.0 {
        return Ok(LensIntegralResult::ZERO);
    }
    let p = image_disc(z_modulus, r)?;
    let phi_max = p.h.min(1.0).sqrt().asin();
    let first = p.b / p.f;
    let second = (1.0 + p.b) / p.one_minus_f;
    let est = integrate(
        |phi: f64| {
            let s = phi.sin();
            let s2 = s * s;
            first / (1.0 - p.v * s2) + second / (1.0 + p.u * s2)
        },
        0.0,
        phi_max,
        quad,
        "transformed lens integral",
    )?;
    let boundary = boundary_term(z_modulus, r)?;
    Ok(LensIntegralResult {
        value: 0.5 * (est.value - boundary),
        error_estimate: 0.5 * est.error,
    })
}

/// `(1 - r^2)^{-1} arccos((r^2 + |C|^2 - R^2) / (2 r |C|))` when `|z| < 2r/(1+r^2)`, else 0.
/// The arccos argument simplifies to `|z| (1 + r^2) / (2r)`.
pub fn boundary_term(z_modulus: f64, r: f64) -> Result<f64> {
    if lens_is_full_disc(z_modulus, r) {
        return Ok(0.0);
    }
    let x = clamp_unit(z_modulus * (1.0 + r * r) / (2.0 * r))?;
    Ok(x.acos() / ((1.0 - r) * (1.0 + r)))
}
