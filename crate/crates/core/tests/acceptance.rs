//! Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use landau_dpp::counting::{binomial_moment, build_profile, distribution, generating_function, sample_counts};
use landau_dpp::geometry::{euclidean_lens_complement_area, hyperbolic_distance, image_disc, mobius};
use landau_dpp::variance::{
    asymptotic_constant, asymptotic_constant_bound, contraction_check, variance_euclidean_geometric,
    variance_euclidean_shirai, variance_hyperbolic, variance_hyperbolic_via_transformed,
};
use landau_dpp::{variance_series, ComplexPoint, EuclideanLevel, HyperbolicLevel, QuadratureConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn levels(nu: f64) -> Vec<HyperbolicLevel> {
    (0..).map_while(|m| HyperbolicLevel::new(nu, m).ok()).collect()
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

fn bergman_closed_form() -> Outcome {
    let start = Instant::now();
    let level = HyperbolicLevel::new(1.0, 0).unwrap();
    let mut worst = 0.0f64;
    for r in [0.2, 0.5, 0.8, 0.95] {
        let v = variance_hyperbolic(level, r, &quad()).map_err(|e| e.to_string())?;
        let exact = r * r / (1.0 - r.powi(4));
        let err = rel(v.value, exact);
        worst = worst.max(err);
        ensure(err < 1e-5, || format!("r = {r}: {} vs {exact}", v.value))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("max rel err {worst:.2e}, {elapsed:.2?}"))
}

fn series_vs_quadrature() -> Outcome {
    let mut worst = 0.0f64;
    for nu in [1.0, 1.5, 2.7] {
        let level = HyperbolicLevel::new(nu, 0).unwrap();
        for r in [0.5, 0.9] {
            let s = variance_series(nu, r, 1e-12).map_err(|e| e.to_string())?.value;
            let q = variance_hyperbolic(level, r, &quad()).map_err(|e| e.to_string())?.value;
            let err = rel(s, q);
            worst = worst.max(err);
            ensure(err < 1e-5, || format!("nu = {nu}, r = {r}: series {s} vs quadrature {q}"))?;
        }
    }
    Ok(format!("max rel err {worst:.2e}"))
}

fn area_law() -> Outcome {
    let c01 = asymptotic_constant(HyperbolicLevel::new(1.0, 0).unwrap(), &quad()).map_err(|e| e.to_string())?;
    ensure((c01 - 0.5).abs() < 1e-8, || format!("C(1,0) = {c01}"))?;
    let mut summary = Vec::new();
    for (nu, m) in [(1.0, 0), (2.0, 1), (3.2, 2)] {
        let level = HyperbolicLevel::new(nu, m).unwrap();
        let c = asymptotic_constant(level, &quad()).map_err(|e| e.to_string())?;
        let mut gaps = Vec::new();
        for r in [0.9, 0.99, 0.999] {
            let v = variance_hyperbolic(level, r, &quad()).map_err(|e| e.to_string())?.value;
            gaps.push(((1.0 - r * r) * v / c - 1.0).abs());
        }
        ensure(gaps[0] > gaps[1] && gaps[1] > gaps[2], || format!("({nu},{m}) gaps not decreasing: {gaps:?}"))?;
        ensure(gaps[2] < 0.02, || format!("({nu},{m}) gap {} at r = 0.999", gaps[2]))?;
        summary.push(format!("({nu},{m}) {:.1e}", gaps[2]));
    }
    Ok(format!("C(1,0) = {c01:.12}; gaps at 0.999: {}", summary.join(", ")))
}

fn constant_bound() -> Outcome {
    let mut count = 0;
    let mut tightest = f64::INFINITY;
    for nu in [0.75, 1.0, 2.0, 3.5, 5.0] {
        for level in levels(nu) {
            let c = asymptotic_constant(level, &quad()).map_err(|e| e.to_string())?;
            let bound = asymptotic_constant_bound(level);
            ensure(c <= bound, || format!("nu = {nu}, m = {}: C = {c} > {bound}", level.m()))?;
            tightest = tightest.min(bound - c);
            count += 1;
        }
    }
    Ok(format!("{count} levels, zero violations, smallest slack {tightest:.3}"))
}

fn euclidean_routes() -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..=2 {
        let level = EuclideanLevel::new(n);
        for r in [0.5, 1.0, 2.0] {
            let a = variance_euclidean_shirai(level, r, &quad()).map_err(|e| e.to_string())?.value;
            let b = variance_euclidean_geometric(level, r, &quad()).map_err(|e| e.to_string())?.value;
            worst = worst.max(rel(a, b));
            ensure(rel(a, b) < 1e-6, || format!("n = {n}, r = {r}: {a} vs {b}"))?;
        }
    }
    let mut growth = Vec::new();
    for n in 0..=2 {
        let level = EuclideanLevel::new(n);
        let v20 = variance_euclidean_shirai(level, 20.0, &quad()).map_err(|e| e.to_string())?.value / 20.0;
        let v40 = variance_euclidean_shirai(level, 40.0, &quad()).map_err(|e| e.to_string())?.value / 40.0;
        ensure(rel(v20, v40) < 0.02, || format!("n = {n}: V/r = {v20} at 20, {v40} at 40"))?;
        growth.push(format!("{:.1e}", rel(v20, v40)));
    }
    Ok(format!("route rel err {worst:.2e}; V/r drift 20 vs 40: {}", growth.join(", ")))
}

fn hyperbolic_routes() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for nu in [2.6, 3.5, 5.0] {
        for m in 0..=2 {
            let level = HyperbolicLevel::new(nu, m).unwrap();
            for r in [0.3, 0.6, 0.9] {
                let a = variance_hyperbolic(level, r, &quad()).map_err(|e| e.to_string())?.value;
                let b = variance_hyperbolic_via_transformed(level, r, &quad()).map_err(|e| e.to_string())?.value;
                worst = worst.max(rel(a, b));
                ensure(rel(a, b) < 1e-6, || format!("({nu},{m},{r}): {a} vs {b}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, max rel err {worst:.2e}"))
}

const COUNTING_CASES: [(f64, f64); 3] = [(1.0, 0.5), (1.5, 0.7), (3.0, 0.9)];

fn cycle_formula() -> Outcome {
    let mut worst = 0.0f64;
    for (nu, r) in COUNTING_CASES {
        let profile = build_profile(nu, r, 1e-14).map_err(|e| e.to_string())?;
        let law = distribution(&profile);
        for k in 1..=5 {
            let cycle = binomial_moment(&profile, k).map_err(|e| e.to_string())?;
            let direct = law.expect(|n| binom(n, k));
            let err = (cycle - direct).abs() / direct.abs().max(1.0);
            worst = worst.max(err);
            ensure(err < 1e-9, || format!("(nu,r) = ({nu},{r}), k = {k}: {cycle} vs {direct}"))?;
        }
    }
    Ok(format!("max scaled err {worst:.2e}"))
}

fn generating_function_duality() -> Outcome {
    let mut worst = 0.0f64;
    for (nu, r) in COUNTING_CASES {
        let profile = build_profile(nu, r, 1e-14).map_err(|e| e.to_string())?;
        let law = distribution(&profile);
        for s in [-0.5, 0.25, 0.9] {
            let g = generating_function(&profile, s).map_err(|e| e.to_string())?;
            let e = law.expect(|n| (1.0 + s).powi(n as i32));
            let err = (g - e).abs() / e.abs().max(1.0);
            worst = worst.max(err);
            ensure(err < 1e-9, || format!("(nu,r) = ({nu},{r}), s = {s}: {g} vs {e}"))?;
        }
    }
    Ok(format!("max scaled err {worst:.2e}"))
}

fn monte_carlo() -> Outcome {
    let profile = build_profile(1.5, 0.7, 1e-12).map_err(|e| e.to_string())?;
    let law = distribution(&profile);
    let n = 100_000u64;
    let hist = sample_counts(&profile, 0, n).map_err(|e| e.to_string())?;
    let se = (law.variance / n as f64).sqrt();
    let z = (hist.mean() - law.mean) / se;
    ensure(z.abs() < 4.0, || format!("sample mean {} vs {} ({z:.2} SE)", hist.mean(), law.mean))?;
    let var_err = rel(hist.variance(), law.variance);
    ensure(var_err < 0.05, || format!("sample variance {} vs {}", hist.variance(), law.variance))?;
    let again = sample_counts(&profile, 0, n).map_err(|e| e.to_string())?;
    ensure(again == hist, || "rerun with the same seed differs".into())?;
    Ok(format!("mean off by {z:.2} SE, variance off by {:.2}%, rerun identical", 100.0 * var_err))
}

fn random_disc_point(rng: &mut ChaCha8Rng, max_modulus: f64) -> ComplexPoint {
    let rho = max_modulus * rng.random::<f64>().sqrt();
    ComplexPoint::from_polar(rho, 2.0 * std::f64::consts::PI * rng.random::<f64>())
}

fn geometry_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut inv, mut iso) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let w = random_disc_point(&mut rng, 0.95);
        let z = random_disc_point(&mut rng, 0.95);
        let y = random_disc_point(&mut rng, 0.95);
        let back = mobius(w, 0.0, mobius(w, 0.0, z).unwrap()).unwrap();
        inv = inv.max((back - z).norm());
        let d0 = hyperbolic_distance(z, y).unwrap();
        let d1 = hyperbolic_distance(mobius(w, 0.0, z).unwrap(), mobius(w, 0.0, y).unwrap()).unwrap();
        iso = iso.max((d0 - d1).abs() / d0.max(1.0));
    }
    ensure(inv < 1e-11, || format!("involution defect {inv:e}"))?;
    ensure(iso < 1e-11, || format!("isometry defect {iso:e}"))?;

    let mut boundary = 0.0f64;
    for _ in 0..200 {
        let z = random_disc_point(&mut rng, 0.99);
        let r = 0.01 + 0.98 * rng.random::<f64>();
        let p = image_disc(z.norm(), r).unwrap();
        let center = p.center(z.arg());
        for k in 0..64 {
            let on_circle = ComplexPoint::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
            let image = mobius(z, 0.0, on_circle).unwrap();
            boundary = boundary.max(((image - center).norm() - p.radius).abs());
        }
    }
    ensure(boundary < 1e-10, || format!("image circle defect {boundary:e}"))?;

    let mut mc = 0.0f64;
    for (r, z) in [(1.0, 0.5), (1.0, 1.5), (0.7, 0.2), (2.0, 3.9), (1.0, 2.5)] {
        let oracle = common::euclidean_lens_monte_carlo(r, z, 1500, 3);
        let area = euclidean_lens_complement_area(r, z);
        let err = (oracle - area).abs() / (std::f64::consts::PI * r * r);
        mc = mc.max(err);
        ensure(err < 1e-3, || format!("lens area r = {r}, |z| = {z}: {area} vs sampled {oracle}"))?;
    }

    let mut jump = 0.0f64;
    for r in [0.1, 0.5, 1.0, 3.0] {
        let edge = 2.0 * r;
        // the area moves like r^2 (δ/r)^{3/2} near the edge, so probe within 1e-12 relative
        for delta in [1e-12, 1e-14] {
            let gap = (euclidean_lens_complement_area(r, edge - delta * edge)
                - euclidean_lens_complement_area(r, edge + delta * edge))
            .abs();
            jump = jump.max(gap);
        }
        jump = jump.max((euclidean_lens_complement_area(r, edge) - std::f64::consts::PI * r * r).abs());
    }
    ensure(jump < 1e-12, || format!("jump at |z| = 2r: {jump:e}"))?;
    Ok(format!(
        "involution {inv:.1e}, isometry {iso:.1e}, image circle {boundary:.1e}, lens vs sampling {mc:.1e}, edge jump {jump:.1e}"
    ))
}

fn contraction() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for m in [0usize, 1] {
        let rows = contraction_check(m, 1.0, &[4.0, 8.0, 16.0], &quad()).map_err(|e| e.to_string())?;
        let gaps: Vec<f64> = rows.iter().map(|row| (row.ratio - 1.0).abs()).collect();
        let ratios: Vec<String> = rows.iter().map(|row| format!("{:.4}", row.ratio)).collect();
        let unscaled: Vec<String> = rows.iter().map(|row| format!("{:.4}", row.unscaled_ratio)).collect();
        notes.push(format!("m = {m}: R^2 V ratio [{}], V ratio [{}]", ratios.join(", "), unscaled.join(", ")));
        if !(gaps[0] > gaps[1] && gaps[1] > gaps[2]) {
            failures.push(format!("m = {m}: |ratio - 1| not decreasing"));
        }
        if gaps[2] >= 0.1 {
            failures.push(format!("m = {m}: ratio {:.4} at R = 16", rows[2].ratio));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = format!("{}; {elapsed:.2?}", notes.join("; "));
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}. {detail}", failures.join("; ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Bergman variance closed form", bergman_closed_form),
        ("series vs quadrature variance", series_vs_quadrature),
        ("area law and C(1,0) = 1/2", area_law),
        ("constant bound 2(nu-m)-1", constant_bound),
        ("Euclidean routes and linear growth", euclidean_routes),
        ("hyperbolic lens routes", hyperbolic_routes),
        ("binomial moments by cycle types", cycle_formula),
        ("generating function vs pmf", generating_function_duality),
        ("seeded Monte Carlo", monte_carlo),
        ("disc geometry", geometry_suite),
        ("flat limit", contraction),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
