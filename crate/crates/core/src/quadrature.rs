//! One-dimensional quadrature used by every integral in the crate.
//!
//! Three schemes are available behind [`QuadratureConfig`]:
//!
//! - adaptive 10/21-point Gauss–Kronrod with global bisection of the worst interval,
//! - tanh–sinh (double exponential) with level doubling,
//! - fixed Gauss–Legendre, composite over two halves for an error estimate.
//!
//! Integrands handed to these routines are expected to be smooth on the interval;
//! callers remove endpoint singularities by substitution first.

use std::collections::{BinaryHeap, HashMap};
use std::cmp::Ordering;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integration scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    AdaptiveGaussKronrod,
    TanhSinh,
    GaussLegendreFixed,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive_gauss_kronrod" | "gk" => Ok(Scheme::AdaptiveGaussKronrod),
            "tanh_sinh" | "ts" => Ok(Scheme::TanhSinh),
            "gauss_legendre_fixed" | "gl" => Ok(Scheme::GaussLegendreFixed),
            other => Err(Error::domain(format!("unknown quadrature scheme `{other}`"))),
        }
    }
}

/// Quadrature settings. Immutable once built; use the `with_*` methods to derive variants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    scheme: Scheme,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
    radial_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            scheme: Scheme::AdaptiveGaussKronrod,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 1000,
            radial_nodes: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn new(
        scheme: Scheme,
        rel_tol: f64,
        abs_tol: f64,
        max_subdivisions: usize,
        radial_nodes: usize,
    ) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) || !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::domain("quadrature tolerances must be positive and finite"));
        }
        if max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        if radial_nodes < 2 {
            return Err(Error::domain("radial_nodes must be at least 2"));
        }
        Ok(QuadratureConfig {
            scheme,
            rel_tol,
            abs_tol,
            max_subdivisions,
            radial_nodes,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial_nodes
    }

    pub fn with_scheme(self, scheme: Scheme) -> Self {
        QuadratureConfig { scheme, ..self }
    }

    pub fn with_tolerances(self, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        QuadratureConfig::new(self.scheme, rel_tol, abs_tol, self.max_subdivisions, self.radial_nodes)
    }

    pub fn with_radial_nodes(self, radial_nodes: usize) -> Result<Self> {
        QuadratureConfig::new(self.scheme, self.rel_tol, self.abs_tol, self.max_subdivisions, radial_nodes)
    }

    /// Tolerance for an integral nested inside another one.
    pub(crate) fn inner(self) -> Self {
        QuadratureConfig {
            rel_tol: (self.rel_tol * 0.1).max(1e-14),
            abs_tol: (self.abs_tol * 0.1).max(1e-300),
            ..self
        }
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of an integral and its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };

    pub fn scale(self, factor: f64) -> Estimate {
        Estimate {
            value: self.value * factor,
            error: self.error * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

/// Integrates `f` over `[a, b]` with the scheme selected in `cfg`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig, context: &'static str) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!("non-finite integration bounds in {context}")));
    }
    if a == b {
        return Ok(Estimate::ZERO);
    }
    match cfg.scheme {
        Scheme::AdaptiveGaussKronrod => gauss_kronrod(f, a, b, cfg, context),
        Scheme::TanhSinh => tanh_sinh(f, a, b, cfg, context),
        Scheme::GaussLegendreFixed => gauss_legendre(f, a, b, cfg, context),
    }
}

/// Pairwise (cascade) summation. The order of additions depends only on the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

// QUADPACK qk21 abscissae and weights.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_293_304_558,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, paired with XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn qk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut res_g = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    context: &'static str,
) -> Result<Estimate> {
    let first = qk21(&mut f, a, b);
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut splits = 1;
    while total_err > cfg.tolerance_for(total) && splits < cfg.max_subdivisions {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            heap.push(worst);
            break;
        }
        let left = qk21(&mut f, worst.a, mid);
        let right = qk21(&mut f, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        splits += 1;
    }
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<f64> = segments.iter().map(|s| s.value).collect();
    let errors: Vec<f64> = segments.iter().map(|s| s.error).collect();
    let value = pairwise_sum(&values);
    let error = pairwise_sum(&errors);
    if !value.is_finite() {
        return Err(Error::Quadrature {
            error: f64::INFINITY,
            tolerance: cfg.tolerance_for(0.0),
            context,
        });
    }
    let tolerance = cfg.tolerance_for(value);
    if error > tolerance {
        return Err(Error::Quadrature {
            error,
            tolerance,
            context,
        });
    }
    Ok(Estimate {
        value,
        error,
        evaluations,
    })
}

const TANH_SINH_MAX_LEVEL: usize = 12;
const TANH_SINH_T_MAX: f64 = 4.0;

fn tanh_sinh<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    context: &'static str,
) -> Result<Estimate> {
    use std::f64::consts::FRAC_PI_2;
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut evaluations = 1;
    let center_value = f(center);

    // Contribution of the nodes ±t, with endpoint distances computed without cancellation.
    let mut pair = |t: f64| -> f64 {
        let s = FRAC_PI_2 * t.sinh();
        let ch = s.cosh();
        let w = FRAC_PI_2 * t.cosh() / (ch * ch);
        // 1 - tanh(s) = 2 / (1 + e^{2s})
        let gap = half * 2.0 / (1.0 + (2.0 * s).exp());
        if gap.abs() == 0.0 || w == 0.0 {
            return 0.0;
        }
        let left = a + gap;
        let right = b - gap;
        let mut acc = 0.0;
        if left > a.min(b) && left < a.max(b) {
            acc += f(left);
            evaluations += 1;
        }
        if right > a.min(b) && right < a.max(b) {
            acc += f(right);
            evaluations += 1;
        }
        w * acc
    };

    let mut step = 1.0;
    let mut sum = FRAC_PI_2 * center_value;
    let mut k = 1;
    while k as f64 * step <= TANH_SINH_T_MAX {
        sum += pair(k as f64 * step);
        k += 1;
    }
    let mut estimate = sum * step * half;
    let mut error = f64::INFINITY;
    for _level in 1..=TANH_SINH_MAX_LEVEL {
        step *= 0.5;
        let mut k = 1;
        while k as f64 * step <= TANH_SINH_T_MAX {
            sum += pair(k as f64 * step);
            k += 2;
        }
        let next = sum * step * half;
        error = (next - estimate).abs();
        estimate = next;
        if error <= cfg.tolerance_for(estimate) {
            break;
        }
    }
    if !estimate.is_finite() || error > cfg.tolerance_for(estimate) {
        return Err(Error::Quadrature {
            error,
            tolerance: cfg.tolerance_for(estimate),
            context,
        });
    }
    Ok(Estimate {
        value: estimate,
        error,
        evaluations,
    })
}

#[derive(Debug)]
struct LegendreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl LegendreRule {
    fn compute(n: usize) -> LegendreRule {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        LegendreRule { nodes, weights }
    }

    fn apply<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .collect();
        h * pairwise_sum(&terms)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn legendre_rule(n: usize) -> Arc<LegendreRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LegendreRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(LegendreRule::compute(n)))
        .clone()
}

fn gauss_legendre<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    context: &'static str,
) -> Result<Estimate> {
    let n = cfg.radial_nodes;
    let rule = legendre_rule(n);
    let whole = rule.apply(&mut f, a, b);
    let mid = 0.5 * (a + b);
    let halves = rule.apply(&mut f, a, mid) + rule.apply(&mut f, mid, b);
    let error = (halves - whole).abs();
    let tolerance = cfg.tolerance_for(halves);
    if !halves.is_finite() || error > tolerance {
        return Err(Error::Quadrature {
            error,
            tolerance,
            context,
        });
    }
    Ok(Estimate {
        value: halves,
        error,
        evaluations: 3 * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_schemes() -> Vec<QuadratureConfig> {
        let base = QuadratureConfig::default();
        vec![
            base,
            base.with_scheme(Scheme::TanhSinh),
            base.with_scheme(Scheme::GaussLegendreFixed),
        ]
    }

    #[test]
    fn polynomial_and_exponential_integrals() {
        for cfg in all_schemes() {
            let e = integrate(|x| x * x, 0.0, 3.0, &cfg, "test").unwrap();
            assert!((e.value - 9.0).abs() < 1e-12, "{:?}: {}", cfg.scheme(), e.value);
            let e = integrate(|x: f64| x.exp(), -1.0, 2.0, &cfg, "test").unwrap();
            let exact = 2f64.exp() - (-1f64).exp();
            assert!((e.value - exact).abs() < 1e-11, "{:?}", cfg.scheme());
        }
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let cfg = QuadratureConfig::default();
        let fwd = integrate(|x: f64| x.sin(), 0.0, 1.0, &cfg, "test").unwrap();
        let rev = integrate(|x: f64| x.sin(), 1.0, 0.0, &cfg, "test").unwrap();
        assert!((fwd.value + rev.value).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let cfg = QuadratureConfig::default();
        let e = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &cfg, "test").unwrap();
        assert!((e.value - 2.0 / 3.0).abs() < 1e-10);
        let ts = cfg.with_scheme(Scheme::TanhSinh);
        let e = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &ts, "test").unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadratureConfig::new(Scheme::AdaptiveGaussKronrod, 1e-14, 1e-300, 1, 64).unwrap();
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &cfg, "test").unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(Scheme::TanhSinh, 0.0, 1e-12, 10, 64).is_err());
        assert!(QuadratureConfig::new(Scheme::TanhSinh, 1e-9, -1.0, 10, 64).is_err());
        assert!(QuadratureConfig::new(Scheme::TanhSinh, 1e-9, 1e-12, 0, 64).is_err());
        assert_eq!("gk".parse::<Scheme>().unwrap(), Scheme::AdaptiveGaussKronrod);
        assert!("simpson".parse::<Scheme>().is_err());
    }

    #[test]
    fn legendre_weights_sum_to_two() {
        for n in [2, 7, 64, 129] {
            let rule = legendre_rule(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_inputs() {
        let v: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 5050.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
