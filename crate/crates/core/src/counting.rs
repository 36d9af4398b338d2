//! Exact law of the disc count `N_r` for the weighted Bergman process (`m = 0`).
//!
//! `N_r` is distributed as a sum of independent Bernoulli variables with
//! `P(X_j = 1) = p_j = B_r(j, 2ν-1) / B_1(j, 2ν-1)`, `j >= 1`. Everything here works
//! on a truncated profile `p_1..p_J` carrying a rigorous bound on the neglected mass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::beta::ln_beta;

use crate::error::{Error, Result};
use crate::quadrature::pairwise_sum;
use crate::specfun::{incomplete_beta, pochhammer_over_factorial, IncompleteBetaRequest};
use crate::variance::{Route, VarianceResult};

/// Hard cap on the number of Bernoulli factors kept.
pub const MAX_TERMS: usize = 100_000;

/// Largest `k` accepted by [`binomial_moment`].
pub const MAX_BINOMIAL_MOMENT: usize = 8;

/// Relative agreement required between the two closed forms of each `p_j`.
const FORM_AGREEMENT: f64 = 1e-10;

/// Truncated Bernoulli profile `p_1..p_J` of the count in `D_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliProfile {
    pub nu: f64,
    pub r: f64,
    /// `probabilities[j - 1] = p_j`
    pub probabilities: Vec<f64>,
    /// Upper bound on `Σ_{j > J} p_j`.
    pub tail_bound: f64,
}

impl BernoulliProfile {
    /// A profile with the given probabilities and no tail, mainly for tests.
    pub fn from_probabilities(probabilities: Vec<f64>) -> Result<Self> {
        if let Some(p) = probabilities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::domain(format!("Bernoulli probability {p} outside [0,1]")));
        }
        Ok(BernoulliProfile {
            nu: f64::NAN,
            r: f64::NAN,
            probabilities,
            tail_bound: 0.0,
        })
    }

    /// Number of retained factors `J`.
    pub fn truncation(&self) -> usize {
        self.probabilities.len()
    }

    /// `Σ_j p_j^l` over the retained factors.
    pub fn power_sum(&self, l: u32) -> f64 {
        let powers: Vec<f64> = self.probabilities.iter().map(|p| p.powi(l as i32)).collect();
        pairwise_sum(&powers)
    }

    pub fn mean(&self) -> f64 {
        self.power_sum(1)
    }
}

fn check_profile_inputs(nu: f64, r: f64, epsilon: f64) -> Result<()> {
    if !(nu > 0.5 && nu.is_finite()) {
        return Err(Error::domain(format!("magnetic strength must satisfy nu > 1/2, got {nu}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::domain(format!("disc radius must lie in (0,1), got {r}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!("tail tolerance must be positive, got {epsilon}")));
    }
    Ok(())
}

/// `p_j` from both `(2ν-1) (2ν)_{j-1} / (j-1)! B_r(j, 2ν-1)` and `B_r(j, 2ν-1) / B_1(j, 2ν-1)`.
/// Returns the Pochhammer form after checking the two agree.
fn bernoulli_probability(nu: f64, r: f64, j: usize) -> Result<f64> {
    let b = 2.0 * nu - 1.0;
    let partial = incomplete_beta(IncompleteBetaRequest::new(r, j, b)?)?;
    let pochhammer_form = b * pochhammer_over_factorial(2.0 * nu, j - 1)? * partial;
    let ratio_form = partial * (-ln_beta(j as f64, b)).exp();
    if (pochhammer_form - ratio_form).abs() > FORM_AGREEMENT * ratio_form.abs() {
        return Err(Error::Consistency(format!(
            "p_{j} forms disagree: {pochhammer_form:e} vs {ratio_form:e} (nu = {nu}, r = {r})"
        )));
    }
    Ok(pochhammer_form)
}

/// Builds `p_1..p_J` with `J` the first index where the neglected mass is provably
/// below `epsilon`.
///
/// `B_r(j+1, b) <= r^2 B_r(j, b)` and `B_1(j, b) / B_1(j+1, b) = 1 + b/j` give
/// `p_{j+1} / p_j <= q_j = r^2 (1 + (2ν-1)/j)`, which decreases in `j`. Once `q_J < 1`
/// the tail is at most `p_J q_J / (1 - q_J)`.
pub fn build_profile(nu: f64, r: f64, epsilon: f64) -> Result<BernoulliProfile> {
    check_profile_inputs(nu, r, epsilon)?;
    let b = 2.0 * nu - 1.0;
    let r2 = r * r;
    let mut probabilities = Vec::new();
    let mut tail_bound = f64::INFINITY;
    for j in 1..=MAX_TERMS {
        let p = bernoulli_probability(nu, r, j)?;
        probabilities.push(p);
        let q = r2 * (1.0 + b / j as f64);
        if q < 1.0 {
            tail_bound = p * q / (1.0 - q);
            if tail_bound < epsilon {
                return Ok(BernoulliProfile {
                    nu,
                    r,
                    probabilities,
                    tail_bound,
                });
            }
        }
    }
    Err(Error::Truncation {
        terms: MAX_TERMS,
        tail_bound,
        epsilon,
    })
}

/// `E[(1 + s)^{N_r}] = Π_j (1 + s p_j)`, as `exp(Σ log1p(s p_j))`, for `s ∈ (-1, 1)`.
pub fn generating_function(profile: &BernoulliProfile, s: f64) -> Result<f64> {
    if !(s > -1.0 && s < 1.0) {
        return Err(Error::domain(format!("generating function argument must lie in (-1,1), got {s}")));
    }
    Ok(product(profile, s))
}

pub(crate) fn product(profile: &BernoulliProfile, s: f64) -> f64 {
    let logs: Vec<f64> = profile.probabilities.iter().map(|p| (s * p).ln_1p()).collect();
    pairwise_sum(&logs).exp()
}

/// Law of the truncated count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDistribution {
    /// `pmf[n] = P(N = n)`, `n = 0..=J`
    pub pmf: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

impl CountDistribution {
    /// `Σ_n g(n) pmf(n)`.
    pub fn expect(&self, g: impl Fn(usize) -> f64) -> f64 {
        let terms: Vec<f64> = self.pmf.iter().enumerate().map(|(n, p)| g(n) * p).collect();
        pairwise_sum(&terms)
    }
}

/// Poisson-binomial pmf by sequential convolution.
pub fn distribution(profile: &BernoulliProfile) -> CountDistribution {
    let mut pmf = Vec::with_capacity(profile.truncation() + 1);
    pmf.push(1.0);
    for &p in &profile.probabilities {
        pmf.push(0.0);
        for n in (1..pmf.len()).rev() {
            pmf[n] = pmf[n] * (1.0 - p) + pmf[n - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    let spread: Vec<f64> = profile.probabilities.iter().map(|p| p * (1.0 - p)).collect();
    CountDistribution {
        pmf,
        mean: profile.mean(),
        variance: pairwise_sum(&spread),
    }
}

/// Integer partitions of `k`, each as the multiplicity vector `mult[l] = m_l`.
fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max_part: usize, mult: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(mult.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            mult[part] += 1;
            go(remaining - part, part, mult, out);
            mult[part] -= 1;
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut vec![0; k + 1], &mut out);
    out
}

/// Binomial moment `E[C(N_r, k)]` by the cycle-sum over `S_k`,
/// `(1/k!) Σ_σ Π_{cycles τ} (-1)^{|τ|+1} Σ_j p_j^{|τ|}`.
///
/// Permutations are grouped by cycle type: a type with `m_l` cycles of length `l` occurs
/// `k! / Π l^{m_l} m_l!` times, so each contributes `Π ((-1)^{l+1} P_l / l)^{m_l} / m_l!`.
pub fn binomial_moment(profile: &BernoulliProfile, k: usize) -> Result<f64> {
    if !(1..=MAX_BINOMIAL_MOMENT).contains(&k) {
        return Err(Error::domain(format!(
            "binomial moment order must lie in 1..={MAX_BINOMIAL_MOMENT}, got {k}"
        )));
    }
    let power_sums: Vec<f64> = (0..=k as u32).map(|l| profile.power_sum(l)).collect();
    let terms: Vec<f64> = partitions(k)
        .iter()
        .map(|mult| {
            mult.iter()
                .enumerate()
                .skip(1)
                .map(|(l, &ml)| {
                    let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                    let cycle = sign * power_sums[l] / l as f64;
                    cycle.powi(ml as i32) / factorial(ml)
                })
                .product()
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Var N_r = Σ_j p_j - Σ_j p_j^2`, with the profile's tail bound as the error estimate.
pub fn variance_series(nu: f64, r: f64, epsilon: f64) -> Result<VarianceResult> {
    let profile = build_profile(nu, r, epsilon)?;
    let spread: Vec<f64> = profile.probabilities.iter().map(|p| p * (1.0 - p)).collect();
    Ok(VarianceResult {
        value: pairwise_sum(&spread),
        error_estimate: profile.tail_bound,
        route: Route::Series,
    })
}

/// Histogram of simulated counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountHistogram {
    /// `counts[n]` = number of draws equal to `n`
    pub counts: Vec<u64>,
}

impl CountHistogram {
    pub fn n_samples(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        let total: f64 = self.counts.iter().enumerate().map(|(n, &c)| n as f64 * c as f64).sum();
        total / self.n_samples() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let ss: f64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(n, &c)| c as f64 * (n as f64 - mean).powi(2))
            .sum();
        ss / (self.n_samples() as f64 - 1.0)
    }
}

/// Draws `n_samples` independent counts `Σ_j Bernoulli(p_j)`.
///
/// Draw `i` uses its own generator, `ChaCha8Rng::seed_from_u64(seed)` switched to
/// stream `i`, with one uniform per factor in index order. Draws run in parallel and
/// histograms merge by integer addition, so the result depends only on `seed`.
pub fn sample_counts(profile: &BernoulliProfile, seed: u64, n_samples: u64) -> Result<CountHistogram> {
    if n_samples < 1 {
        return Err(Error::domain("n_samples must be at least 1"));
    }
    let bins = profile.truncation() + 1;
    let counts = (0..n_samples)
        .into_par_iter()
        .fold(
            || vec![0u64; bins],
            |mut hist, i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let n = profile.probabilities.iter().filter(|&&p| rng.random::<f64>() < p).count();
                hist[n] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(CountHistogram { counts })
}
