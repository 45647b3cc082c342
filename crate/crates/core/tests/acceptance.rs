//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Runs as its own harness. The process fails when a criterion's status
//! differs from `EXPECTED_FAILURES`: an unexpected failure, or a listed
//! criterion that starts passing.

mod common;

use num_complex::Complex64;
use osc_decay::decay_lab::{
    epsilon_sweep, fmt_f64, geometric_grid, lambda_sweep, sublevel_csv, sweep_csv, verify_theorem1, SublevelConfig, Trend,
};
use osc_decay::integrator::{
    dyadic_envelope_bound, dyadic_levels_needed, integrate_classical, integrate_envelope, integrate_envelope_restricted, QuadConfig,
};
use osc_decay::ml_special::{ml_bound_ratio, ml_eval, MLParams};
use osc_decay::newton_geometry::{analyze, newton_polyhedron, Point};
use osc_decay::phase_algebra::{parse_phase, Amplitude, PolynomialPhase, Rational, WorkingDomain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

/// Criteria that fail on this implementation, with the reason on record.
const EXPECTED_FAILURES: &[u32] = &[9];

struct Verdict {
    id: u32,
    pass: bool,
    seconds: f64,
    budget: f64,
    detail: String,
}

fn timed(id: u32, budget: f64, f: impl FnOnce() -> (bool, String)) -> Verdict {
    let t = Instant::now();
    let (pass, detail) = f();
    let seconds = t.elapsed().as_secs_f64();
    Verdict { id, pass: pass && seconds < budget, seconds, budget, detail }
}

fn phase(text: &str) -> PolynomialPhase {
    parse_phase(text).unwrap()
}

fn height(f: &PolynomialPhase) -> (Rational, u8) {
    let inv = analyze(f, true).unwrap();
    (inv.height_in_coords, inv.multiplicity_m)
}

fn bump() -> Amplitude {
    Amplitude::Bump { sigma: 0.5 }
}

fn criterion_1() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let r = 20.0 * rng.gen::<f64>();
        // every fifth point on the imaginary axis
        let z = if i % 5 == 0 { Complex64::new(0.0, if i % 2 == 0 { r } else { -r }) } else { Complex64::from_polar(r, rng.gen_range(-PI..PI)) };
        let e = z.exp();
        let got = ml_eval(MLParams::EXPONENTIAL, z, 1e-12).unwrap();
        worst = worst.max((got - e).norm() / e.norm());
    }
    (worst <= 1e-10, format!("max relative error {worst:.2e} over 100 z, |z| ≤ 20"))
}

fn criterion_2() -> (bool, String) {
    let p = MLParams::new(0.5, 1.0).unwrap();
    let ratios: Vec<f64> = (0..50).map(|i| ml_bound_ratio(p, 10f64.powf(6.0 * i as f64 / 49.0)).unwrap()).collect();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    (max / min < 100.0, format!("max/min of |E(it)|(1+t) on 10^0..10^6 = {:.3}", max / min))
}

fn random_support(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = rng.gen_range(1..=12);
    (0..n).map(|_| (rng.gen_range(0..=9), rng.gen_range(0..=9))).collect()
}

fn criterion_3() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    for _ in 0..200 {
        let s = random_support(&mut rng);
        let poly = newton_polyhedron(&s).unwrap();
        if poly.vertices != common::hull_oracle(&s) || poly.distance() != common::distance_oracle(&s) {
            mismatches += 1;
        }
    }
    let fixtures = [("x^2+y^2", common::rat(1), 0, 0), ("x^3+y^3", Rational::new(3.into(), 2.into()), 1, 0), ("x^2*y^2", common::rat(2), 2, 1)];
    let fixtures_ok = fixtures.iter().all(|(t, d, nu, m)| {
        let inv = analyze(&phase(t), true).unwrap();
        inv.distance_d == *d && inv.nu == *nu && inv.multiplicity_m == *m
    });
    (mismatches == 0 && fixtures_ok, format!("{mismatches}/200 supports differ from the oracle; fixtures exact: {fixtures_ok}"))
}

/// Criteria 4–9 with their CSV outputs, for the determinism check.
struct Heavy {
    verdicts: Vec<(u32, f64, bool, String)>,
    csv: Vec<String>,
}

fn criterion_4(csv: &mut Vec<String>) -> (bool, String) {
    let f = phase("x^2+y^2");
    let psi = Amplitude::IndicatorDisk { radius: 1.0 };
    let cfg = QuadConfig { rel_tol: 1e-7, ..QuadConfig::default() };
    let mut ok = true;
    let mut notes = Vec::new();
    let mut table = String::from("lambda,re,im,error_estimate\n");
    for lambda in [50.0, 500.0] {
        let r = integrate_classical(&f, &psi, lambda, &cfg).unwrap();
        // π(e^{iλ}−1)/(iλ)
        let (sin, cos) = lambda.sin_cos();
        let exact = Complex64::new(PI * sin / lambda, PI * (1.0 - cos) / lambda);
        let err = (r.value - exact).norm();
        ok &= err <= 2.0 * r.abs_error_estimate && r.abs_error_estimate <= 1e-6;
        notes.push(format!("λ={lambda}: err {err:.1e}, est {:.1e}", r.abs_error_estimate));
        table += &format!("{},{},{},{}\n", fmt_f64(lambda), fmt_f64(r.value.re), fmt_f64(r.value.im), fmt_f64(r.abs_error_estimate));
    }
    csv.push(table);
    (ok, notes.join("; "))
}

fn criterion_5(csv: &mut Vec<String>) -> (bool, String) {
    let f = phase("x^2+y^2");
    let psi = Amplitude::IndicatorDisk { radius: 1.0 };
    let cfg = QuadConfig::default();
    let mut worst = 0.0f64;
    let mut table = String::from("lambda,envelope,error_estimate\n");
    for lambda in [1e2, 1e3, 1e4] {
        let r = integrate_envelope(&f, &psi, lambda, &cfg).unwrap();
        let exact = PI / lambda * lambda.ln_1p();
        worst = worst.max((r.value - exact).abs() / exact);
        table += &format!("{},{},{}\n", fmt_f64(lambda), fmt_f64(r.value), fmt_f64(r.abs_error_estimate));
    }
    csv.push(table);
    (worst <= 0.01, format!("max relative deviation from (π/λ)ln(1+λ): {worst:.2e}"))
}

fn params_of(alpha: f64) -> MLParams {
    MLParams::new(alpha, 1.0).unwrap()
}

fn criterion_6(csv: &mut Vec<String>) -> (bool, String) {
    let grid = geometric_grid(4.0, 1.6e4, 12).unwrap();
    let cfg = QuadConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for text in ["x^2*y^2", "x^3+y^3"] {
        let f = phase(text);
        let (h, m) = height(&f);
        for alpha in [0.5, 1.0] {
            let r = lambda_sweep(&f, &bump(), params_of(alpha), &grid, &h, m, &cfg).unwrap();
            let v = verify_theorem1(&r).unwrap();
            let pass = r.samples.len() == 12 && v.trend.bounded();
            ok &= pass;
            notes.push(format!("{text} α={alpha}: slope {:+.3}, spread {:.2}", v.trend.slope_per_decade, v.trend.max_over_min));
            csv.push(sweep_csv(&r));
        }
    }
    (ok, notes.join("; "))
}

fn criterion_7(csv: &mut Vec<String>) -> (bool, String) {
    let grid = geometric_grid(4.0, 1.6e4, 12).unwrap();
    let cfg = QuadConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in [0.5, 1.0] {
        // x²+y² against λ^{-1}·ln λ: the single-log trend
        let f = phase("x^2+y^2");
        let (h, m) = height(&f);
        let r = lambda_sweep(&f, &bump(), params_of(alpha), &grid, &h, m, &cfg).unwrap();
        let v = verify_theorem1(&r).unwrap();
        let single = v.sharper.expect("h = 1 branch");
        ok &= r.samples.len() == 12 && single.non_growing();
        notes.push(format!("x^2+y^2 α={alpha}: |I|λ/lnλ slope {:+.3}", single.slope_per_decade));
        csv.push(sweep_csv(&r));

        // x²−y² against λ^{-1}·ln²λ
        let f = phase("x^2-y^2");
        let (h, m) = height(&f);
        let r = lambda_sweep(&f, &bump(), params_of(alpha), &grid, &h, m, &cfg).unwrap();
        let v = verify_theorem1(&r).unwrap();
        ok &= r.samples.len() == 12 && v.log_power == 2 && v.trend.non_growing();
        notes.push(format!("x^2-y^2 α={alpha}: |I|λ/ln²λ slope {:+.3}", v.trend.slope_per_decade));
        csv.push(sweep_csv(&r));
    }
    (ok, notes.join("; "))
}

fn criterion_8(csv: &mut Vec<String>) -> (bool, String) {
    let domain = WorkingDomain::default();
    let scfg = SublevelConfig::default();

    let f = phase("x^2*y^2");
    let (h, m) = height(&f);
    let r = epsilon_sweep(&f, domain, &geometric_grid(1e-6, 1e-1, 11).unwrap(), &h, m, &scfg).unwrap();
    let delta = r.fitted.as_ref().map(|x| x.delta).unwrap_or(f64::NAN);
    let ok_delta = (0.4..=0.6).contains(&delta);
    csv.push(sublevel_csv(&r.samples));

    let f = phase("x^2+y^2");
    let (h, m) = height(&f);
    let r = epsilon_sweep(&f, domain, &geometric_grid(1e-6, 0.25, 12).unwrap(), &h, m, &scfg).unwrap();
    let disk_dev = r.samples.iter().map(|s| (s.measure - PI * s.epsilon).abs() / (PI * s.epsilon)).fold(0.0, f64::max);
    csv.push(sublevel_csv(&r.samples));

    let f = phase("x^2-y^2");
    let (h, m) = height(&f);
    let r = epsilon_sweep(&f, domain, &geometric_grid(1e-6, 1e-1, 11).unwrap(), &h, m, &scfg).unwrap();
    let band: Vec<f64> = r.samples.iter().map(|s| s.measure / (s.epsilon * (1.0 / s.epsilon).ln())).collect();
    let spread = band.iter().cloned().fold(0.0, f64::max) / band.iter().cloned().fold(f64::INFINITY, f64::min);
    csv.push(sublevel_csv(&r.samples));

    let ok = ok_delta && disk_dev <= 0.01 && spread <= 5.0;
    (ok, format!("x^2*y^2 δ={delta:.3}; x^2+y^2 max dev {disk_dev:.1e}; x^2-y^2 band spread {spread:.2}"))
}

fn criterion_9(csv: &mut Vec<String>) -> (bool, String) {
    let cfg = QuadConfig::default();
    let lambdas = [1e2, 1e3, 1e4];
    let mut dominated = true;
    let mut growing = Vec::new();
    for text in ["x^2+y^2", "x^2-y^2", "x^2*y^2", "x^3+y^3", "x^4+y^4", "x^2*y+y^4"] {
        let f = phase(text);
        let (h, m) = height(&f);
        let mut pts = Vec::new();
        let mut table = String::from("lambda,majorant,envelope,ratio\n");
        for lambda in lambdas {
            let levels = dyadic_levels_needed(&f, &bump(), lambda, cfg.domain).unwrap();
            let b = dyadic_envelope_bound(&f, &bump(), lambda, &h, m, levels, &cfg).unwrap();
            let env = integrate_envelope_restricted(&f, &bump(), lambda, 1.0, &cfg).unwrap();
            dominated &= b.majorant >= env.value;
            let ratio = b.ratio.unwrap();
            pts.push((lambda, ratio));
            table += &format!("{},{},{},{}\n", fmt_f64(lambda), fmt_f64(b.majorant), fmt_f64(env.value), fmt_f64(ratio));
        }
        let t = Trend::of(&pts).unwrap();
        if !t.bounded() {
            growing.push(format!("{text} slope {:+.3}", t.slope_per_decade));
        }
        csv.push(table);
    }
    let detail = format!(
        "majorant ≥ restricted envelope: {dominated}; ratio growing for {}",
        if growing.is_empty() { "none".to_string() } else { growing.join(", ") }
    );
    (dominated && growing.is_empty(), detail)
}

fn heavy() -> Heavy {
    let mut csv = Vec::new();
    let mut verdicts = Vec::new();
    let runs: [(u32, f64, fn(&mut Vec<String>) -> (bool, String)); 6] = [
        (4, 60.0, criterion_4),
        (5, 60.0, criterion_5),
        (6, 600.0, criterion_6),
        (7, 600.0, criterion_7),
        (8, 120.0, criterion_8),
        (9, 300.0, criterion_9),
    ];
    for (id, budget, f) in runs {
        let t = Instant::now();
        let (pass, detail) = f(&mut csv);
        let s = t.elapsed().as_secs_f64();
        verdicts.push((id, s, pass && s < budget, detail));
    }
    Heavy { verdicts, csv }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn main() {
    // cargo passes harness flags such as --list; nothing to enumerate here
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut verdicts = vec![timed(1, 1.0, criterion_1), timed(2, 10.0, criterion_2), timed(3, 5.0, criterion_3)];

    let wide = in_pool(8, heavy);
    let narrow = in_pool(1, heavy);
    let budgets = [60.0, 60.0, 600.0, 600.0, 120.0, 300.0];
    for ((id, seconds, pass, detail), budget) in wide.verdicts.into_iter().zip(budgets) {
        verdicts.push(Verdict { id, pass, seconds, budget, detail });
    }
    let identical = wide.csv == narrow.csv;
    let differing = wide.csv.iter().zip(&narrow.csv).filter(|(a, b)| a != b).count();
    verdicts.push(Verdict {
        id: 10,
        pass: identical,
        seconds: 0.0,
        budget: f64::INFINITY,
        detail: format!("{} CSV tables from criteria 4–9, 8 vs 1 threads: {differing} differ", wide.csv.len()),
    });

    let mut surprises = 0;
    for v in &verdicts {
        let expected_fail = EXPECTED_FAILURES.contains(&v.id);
        let tag = match (v.pass, expected_fail) {
            (true, false) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        if v.pass == expected_fail {
            surprises += 1;
        }
        let budget = if v.budget.is_finite() { format!("{:.0} s", v.budget) } else { "-".into() };
        println!("criterion {:>2} {tag:<17} [{:7.2} s / {budget}] {}", v.id, v.seconds, v.detail);
    }
    let passed = verdicts.iter().filter(|v| v.pass).count();
    println!("{passed}/{} criteria pass", verdicts.len());
    if surprises > 0 {
        println!("{surprises} criteria differ from the expected status");
        std::process::exit(1);
    }
}
