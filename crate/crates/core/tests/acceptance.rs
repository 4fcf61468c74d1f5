//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::Command;

use wiener_l2::oracles::{
    laplace_transform_of_density, mc_moments, mc_sample_functional, quadrature_density, McConfig,
    QuadratureConfig,
};
use wiener_l2::series::{coeff_c, partial_density};
use wiener_l2::{
    cdf, density_g, remainder_bound, tail_error_bound, tail_error_bound_sharp,
    tail_error_bound_uniform, tail_prob, Convention, ProcessParams, TruncationControl,
};

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome { passed, summary }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn series_vs_quadrature() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst = (0.0f64, 0.0);
    for x in log_grid(0.02, 50.0, 50) {
        let s = density_g(x, TruncationControl::tolerance(1e-12))
            .unwrap()
            .value;
        let q = quadrature_density(x, &cfg).unwrap();
        if (s - q).abs() >= worst.0 {
            worst = ((s - q).abs(), x);
        }
    }
    outcome(
        worst.0 <= 1e-8,
        format!(
            "max |g_series - g_quadrature| = {:.3e} at x = {:.4} (tol 1e-8, 50 points)",
            worst.0, worst.1
        ),
    )
}

fn remainder_bound_validity() -> Outcome {
    let mut worst = (f64::NEG_INFINITY, 0, 0.0);
    for x in log_grid(1e-3, 1e3, 40) {
        let reference = partial_density(x, 200).unwrap();
        for n in 1..=20 {
            let excess =
                (partial_density(x, n).unwrap() - reference).abs() - remainder_bound(n, x).unwrap();
            if excess > worst.0 {
                worst = (excess, n, x);
            }
        }
    }
    outcome(
        worst.0 <= 1e-15,
        format!(
            "max (|g_(N-1) - g_200| - bound) = {:.3e} at N = {}, x = {:.4e} (tol 1e-15)",
            worst.0, worst.1, worst.2
        ),
    )
}

fn uniform_bound() -> Outcome {
    let xs = log_grid(1e-3, 1e3, 40);
    let mut worst = (0.0f64, 0);
    for n in 1..=50usize {
        let uniform = 1.5 * (-2.0f64).exp() * (n as f64).powf(-2.5);
        let peak = xs
            .iter()
            .map(|&x| remainder_bound(n, x).unwrap())
            .fold(0.0, f64::max);
        if peak / uniform > worst.0 {
            worst = (peak / uniform, n);
        }
    }
    outcome(
        worst.0 <= 1.0,
        format!(
            "max over grid of remainder_bound / (3/(2e^2)) N^(-5/2) = {:.6} at N = {} (must be <= 1)",
            worst.0, worst.1
        ),
    )
}

/// `(2N-1)!! / (2^N N!) = prod_{l=1}^N (1 - 1/(2l))`, the coefficient the
/// inequality is stated for.
fn coefficient_decay() -> Outcome {
    let limit = (-0.5f64).exp();
    let mut product = 1.0f64;
    let mut worst = (0.0f64, 0);
    for n in 1..=10_000u32 {
        product *= 1.0 - 0.5 / n as f64;
        let lib = coeff_c(n as usize);
        assert!(
            (lib - product).abs() <= 1e-13 * product,
            "coefficient mismatch at {n}"
        );
        let ratio = product * (n as f64).sqrt() / limit;
        if ratio > worst.0 {
            worst = (ratio, n);
        }
    }
    outcome(
        worst.0 < 1.0,
        format!(
            "max (2N-1)!!/(2^N N!) sqrt(N) / e^(-1/2) = {:.6} at N = {} over N in 1..=10^4 (must be < 1)",
            worst.0, worst.1
        ),
    )
}

fn normalization_cdf() -> Outcome {
    let v = cdf(1e4, &ProcessParams::unit(), 200).unwrap().value;
    outcome(
        (v - 1.0).abs() <= 1e-6,
        format!("cdf(c/T^2 = 1e4, N = 200) - 1 = {:.3e} (tol 1e-6)", v - 1.0),
    )
}

fn normalization_partial_sum() -> Outcome {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut c = 1.0f64;
    for l in 0..10_000u32 {
        let t = if l % 2 == 0 { c } else { -c };
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        c *= 1.0 - 0.5 / (l + 1) as f64;
    }
    let d = sum + comp - std::f64::consts::FRAC_1_SQRT_2;
    outcome(
        d.abs() <= 1e-8,
        format!("sum_(l<10^4) (-1)^l c_l - 1/sqrt(2) = {:.3e} (tol 1e-8)", d),
    )
}

fn tail_grid() -> Vec<(f64, ProcessParams)> {
    let mut out = Vec::new();
    for c in log_grid(0.01, 100.0, 10) {
        for t in log_grid(0.1, 10.0, 10) {
            out.push((c, ProcessParams::new(t, Convention::Paper).unwrap()));
        }
    }
    out
}

fn tail_bound_validity() -> Outcome {
    let mut worst = (f64::NEG_INFINITY, 0, 0.0, 0.0);
    for (c, p) in tail_grid() {
        for n in [1usize, 2, 4, 8] {
            let a = tail_prob(c, &p, TruncationControl::terms(n))
                .unwrap()
                .probability;
            let b = tail_prob(c, &p, TruncationControl::terms(n + 20))
                .unwrap()
                .probability;
            let excess = (a - b).abs() - tail_error_bound(c, &p, n).unwrap();
            if excess > worst.0 {
                worst = (excess, n, c, p.horizon);
            }
        }
    }
    outcome(
        worst.0 <= 1e-14,
        format!(
            "max (|P_N - P_(N+20)| - tail_error_bound) = {:.3e} at N = {}, c = {:.3e}, T = {:.3e} (tol 1e-14)",
            worst.0, worst.1, worst.2, worst.3
        ),
    )
}

fn tail_bound_simplifications() -> Outcome {
    let mut violations = 0;
    let mut total = 0;
    let mut worst = (0.0f64, 0, 0.0, 0.0);
    for (c, p) in tail_grid() {
        for n in [1usize, 2, 4, 8] {
            let exact = tail_error_bound(c, &p, n).unwrap();
            let simple = tail_error_bound_uniform(n)
                .unwrap()
                .min(tail_error_bound_sharp(c, &p, n).unwrap());
            total += 1;
            if exact > simple {
                violations += 1;
                if exact / simple > worst.0 {
                    worst = (exact / simple, n, c, p.horizon);
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "tail_error_bound <= min(uniform, sharp) violated at {violations}/{total} points; worst ratio {:.3e} at N = {}, c = {:.3e}, T = {:.3e}",
            worst.0, worst.1, worst.2, worst.3
        ),
    )
}

fn laplace_round_trip() -> Outcome {
    let mut worst = (0.0f64, 0.0);
    for lambda in [0.5f64, 1.0, 2.0, 5.0] {
        let exact = lambda.sqrt().cosh().powf(-0.5);
        let d = (laplace_transform_of_density(lambda).unwrap() - exact).abs();
        if d >= worst.0 {
            worst = (d, lambda);
        }
    }
    outcome(
        worst.0 <= 1e-7,
        format!("max |int e^(-lambda x) g(x) dx - cosh(sqrt(lambda))^(-1/2)| = {:.3e} at lambda = {} (tol 1e-7)", worst.0, worst.1),
    )
}

fn monte_carlo() -> Vec<(&'static str, Outcome)> {
    let cfg = McConfig {
        paths: 1_000_000,
        steps: 2048,
        seed: 20_240_601,
    };
    let raw = ProcessParams::new(1.0, Convention::CameronMartin).unwrap();
    let samples = mc_sample_functional(&raw, &cfg).unwrap();
    let m = mc_moments(&samples).unwrap();
    let n = samples.len() as f64;

    let mut out = vec![
        (
            "7a",
            outcome(
                m.mean.z_score(0.5) <= 4.0,
                format!(
                    "raw mean {:.6} +- {:.2e}, {:.2} sigma from 1/2 (tol 4)",
                    m.mean.mean,
                    m.mean.std_error,
                    m.mean.z_score(0.5)
                ),
            ),
        ),
        (
            "7b",
            outcome(
                m.variance.z_score(1.0 / 3.0) <= 4.0,
                format!(
                    "raw variance {:.6} +- {:.2e}, {:.2} sigma from 1/3 (tol 4)",
                    m.variance.mean,
                    m.variance.std_error,
                    m.variance.z_score(1.0 / 3.0)
                ),
            ),
        ),
    ];

    for (id, convention) in [("7c", Convention::Paper), ("7d", Convention::CameronMartin)] {
        let p = ProcessParams::new(1.0, convention).unwrap();
        // the series variable is J under cameron-martin and J / 2 under paper
        let k = convention.scale() / 2.0;
        let mut worst = 0.0f64;
        let mut parts = Vec::new();
        for c in [0.25, 0.5, 1.0, 2.0] {
            let hits = samples.iter().filter(|&&j| j * k > c).count() as f64;
            let frac = hits / n;
            let se = (frac * (1.0 - frac) / n).sqrt();
            let model = tail_prob(c, &p, TruncationControl::tolerance(1e-8))
                .unwrap()
                .probability;
            let z = (frac - model).abs() / se;
            worst = worst.max(z);
            parts.push(format!("c={c}: {z:.2}"));
        }
        out.push((
            id,
            outcome(
                worst <= 3.0,
                format!(
                    "{convention:?} tail fractions vs tail_prob, sigma: {} (tol 3)",
                    parts.join(", ")
                ),
            ),
        ));
    }
    out
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_wiener-l2");
    let dir = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    for cmd in ["density", "cdf", "tail", "table", "validate"] {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let path = dir.path().join(format!("{cmd}-{format}-{run}"));
                let status = Command::new(bin)
                    .args([
                        cmd, "--seed", "7", "--paths", "20000", "--steps", "256", "--format",
                        format, "--out",
                    ])
                    .arg(&path)
                    .status()
                    .unwrap();
                assert!(
                    status.code().is_some_and(|c| c <= 1),
                    "{cmd} exited with {status}"
                );
                outputs.push(std::fs::read(&path).unwrap());
            }
            if outputs[0] != outputs[1] || outputs[0].is_empty() {
                differing.push(format!("{cmd}/{format}"));
            }
        }
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            "density, cdf, tail, table, validate (csv and json) byte-identical across two runs"
                .to_string()
        } else {
            format!("outputs differ between runs: {}", differing.join(", "))
        },
    )
}

fn main() {
    let mut results: Vec<(&str, &str, Outcome)> = vec![
        ("1", "series-quadrature agreement", series_vs_quadrature()),
        ("2", "remainder bound validity", remainder_bound_validity()),
        ("3a", "uniform remainder bound", uniform_bound()),
        ("3b", "coefficient decay", coefficient_decay()),
        ("4a", "normalization (cdf)", normalization_cdf()),
        (
            "4b",
            "normalization (partial sum)",
            normalization_partial_sum(),
        ),
        ("5a", "tail bound validity", tail_bound_validity()),
        (
            "5b",
            "tail bound simplifications",
            tail_bound_simplifications(),
        ),
        ("6", "Laplace round trip", laplace_round_trip()),
    ];
    for (id, o) in monte_carlo() {
        results.push((id, "Monte Carlo consistency", o));
    }
    results.push(("8", "determinism", determinism()));

    let failed = results.iter().filter(|r| !r.2.passed).count();
    for (id, name, o) in &results {
        println!(
            "{} {id:<3} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.summary
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
