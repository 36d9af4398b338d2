//! Classical special functions: Laguerre and Jacobi polynomials, Pochhammer
//! symbols and the (unregularized) incomplete beta integral.
//!
//! Polynomials are evaluated with forward three-term recurrences, never via
//! coefficient expansions, so large Jacobi parameters (several hundred) stay stable.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig, Scheme};

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_m^{(0, beta)}(x)`.
///
/// Uses the general Jacobi recurrence with `alpha = 0`:
/// `2n(n+b)(2n+b-2) P_n = (2n+b-1)[(2n+b)(2n+b-2)x - b^2] P_{n-1} - 2(n-1)(n+b-1)(2n+b) P_{n-2}`.
pub fn jacobi_zero_beta(m: usize, beta: f64, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + 0.5 * (beta + 2.0) * (x - 1.0);
    for n in 2..=m {
        let nf = n as f64;
        let s = 2.0 * nf + beta;
        let a1 = 2.0 * nf * (nf + beta) * (s - 2.0);
        let a2 = (s - 1.0) * (s * (s - 2.0) * x - beta * beta);
        let a3 = 2.0 * (nf - 1.0) * (nf + beta - 1.0) * s;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Rising factorial `(a)_j = a (a+1) ... (a+j-1)`.
pub fn pochhammer(a: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// `ln (a)_j` for `a > 0`, via log-gamma. Suitable when `(a)_j` overflows.
pub fn ln_pochhammer(a: f64, j: usize) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("ln_pochhammer needs a > 0, got {a}")));
    }
    if j == 0 {
        return Ok(0.0);
    }
    Ok(ln_gamma(a + j as f64) - ln_gamma(a))
}

/// `(a)_j / j!` for `a > 0`.
///
/// Products of ratios for moderate `j`; the log-gamma route beyond that, where the
/// plain product would lose accuracy over many factors.
pub fn pochhammer_over_factorial(a: f64, j: usize) -> Result<f64> {
    const DIRECT_LIMIT: usize = 150;
    if !(a > 0.0) {
        return Err(Error::domain(format!("pochhammer ratio needs a > 0, got {a}")));
    }
    if j <= DIRECT_LIMIT {
        Ok((0..j).fold(1.0, |acc, i| acc * (a + i as f64) / (i as f64 + 1.0)))
    } else {
        Ok((ln_pochhammer(a, j)? - ln_gamma(j as f64 + 1.0)).exp())
    }
}

/// Parameters of `B_r(j, b) = \int_0^{r^2} s^{j-1} (1-s)^{b-1} ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncompleteBetaRequest {
    pub radius: f64,
    pub first_index: usize,
    pub second_parameter: f64,
}

impl IncompleteBetaRequest {
    pub fn new(radius: f64, first_index: usize, second_parameter: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&radius) {
            return Err(Error::domain(format!("incomplete beta radius must lie in [0,1], got {radius}")));
        }
        if first_index < 1 {
            return Err(Error::domain("incomplete beta first index must be >= 1"));
        }
        if !(second_parameter > 0.0 && second_parameter.is_finite()) {
            return Err(Error::domain(format!(
                "incomplete beta second parameter must be > 0, got {second_parameter}"
            )));
        }
        Ok(IncompleteBetaRequest {
            radius,
            first_index,
            second_parameter,
        })
    }
}

fn incomplete_beta_quadrature() -> QuadratureConfig {
    QuadratureConfig::new(Scheme::AdaptiveGaussKronrod, 1e-13, 1e-300, 2000, 64)
        .expect("static quadrature settings are valid")
}

/// `B_r(j, b) = \int_0^{r^2} s^{j-1} (1-s)^{b-1} ds`, by adaptive Gauss–Kronrod.
///
/// When `b < 1` and `r > 0.99` the integrable singularity at `s = 1` is removed by
/// `1 - s = v^{1/b}`, which turns the integral into
/// `(1/b) \int_{(1-r^2)^b}^1 (1 - v^{1/b})^{j-1} dv`.
pub fn incomplete_beta(req: IncompleteBetaRequest) -> Result<f64> {
    let IncompleteBetaRequest {
        radius: r,
        first_index: j,
        second_parameter: b,
    } = IncompleteBetaRequest::new(req.radius, req.first_index, req.second_parameter)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let upper = r * r;
    let jm1 = (j - 1) as f64;
    let cfg = incomplete_beta_quadrature();
    if b < 1.0 && r > 0.99 {
        let one_minus = (1.0 - r) * (1.0 + r);
        let lower = one_minus.powf(b);
        let inv_b = 1.0 / b;
        let est = integrate(
            |v: f64| (1.0 - v.powf(inv_b)).max(0.0).powf(jm1),
            lower,
            1.0,
            &cfg,
            "incomplete beta (power substitution)",
        )?;
        return Ok(est.value * inv_b);
    }
    let bm1 = b - 1.0;
    let est = integrate(
        |s: f64| s.powf(jm1) * (1.0 - s).powf(bm1),
        0.0,
        upper,
        &cfg,
        "incomplete beta",
    )?;
    Ok(est.value)
}
