use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use wiener_l2::cli::Grid;
use wiener_l2::oracles::{generating_function, quadrature_density, QuadratureConfig};
use wiener_l2::series::partial_density;
use wiener_l2::summation::compensated_sum;
use wiener_l2::{
    cdf, density_f, density_g, erfc, remainder_bound, tail_error_bound, tail_prob, Convention,
    ProcessParams, TruncationControl,
};

/// erfc from the positive-term series
/// `erf(x) = (2/sqrt(pi)) exp(-x^2) sum 2^n x^(2n+1) / (2n+1)!!` below 1/2 and
/// the Laplace continued fraction above.
fn erfc_reference(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_reference(-x);
    }
    if x < 0.5 {
        let mut term = x;
        let mut sum = x;
        let mut n = 0.0;
        while term > 1e-18 * sum {
            n += 1.0;
            term *= 2.0 * x * x / (2.0 * n + 1.0);
            sum += term;
        }
        1.0 - 2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp() * sum
    } else {
        // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
        let mut f = x;
        for k in (1..2000).rev() {
            f = x + (k as f64 / 2.0) / f;
        }
        // x^2 = hi^2 + (x + hi)(x - hi) with hi^2 exact keeps exp accurate near 26
        let hi = f64::from_bits(x.to_bits() & !((1u64 << 27) - 1));
        (-hi * hi).exp() * (-(x + hi) * (x - hi)).exp() / std::f64::consts::PI.sqrt() / f
    }
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn erfc_matches_reference(x in -5.0f64..26.0) {
        let r = erfc_reference(x);
        prop_assert!((erfc(x) - r).abs() <= 1e-14 * r, "x={} erfc={} ref={}", x, erfc(x), r);
    }

    #[test]
    fn compensated_sum_is_nearly_exact(values in prop::collection::vec(-1e6f64..1e6, 1..200)) {
        let mut total = BigRational::zero();
        for &v in &values {
            total += exact(v);
        }
        let s = compensated_sum(values.iter().copied());
        let err = (exact(s) - &total).abs();
        let magnitude: f64 = values.iter().map(|v| v.abs()).sum();
        let n = values.len() as f64;
        let limit = 2.0 * f64::EPSILON * total.to_f64().unwrap().abs()
            + 2.0 * n * f64::EPSILON * f64::EPSILON * magnitude;
        prop_assert!(err <= exact(limit) || err.is_zero());
    }

    #[test]
    fn remainder_bound_dominates(log_x in -3.0f64..3.0, n in 1usize..40) {
        let x = 10f64.powf(log_x);
        let reference = partial_density(x, 200).unwrap();
        let err = (partial_density(x, n).unwrap() - reference).abs();
        prop_assert!(err <= remainder_bound(n, x).unwrap() + 1e-15);
    }

    #[test]
    fn tolerance_mode_meets_eps(log_x in -2.0f64..1.0, log_eps in -14.0f64..-2.0) {
        let x = 10f64.powf(log_x);
        let eps = 10f64.powf(log_eps);
        let b = density_g(x, TruncationControl::tolerance(eps)).unwrap();
        prop_assert!(b.error_bound <= eps);
        prop_assert!(b.value >= 0.0);
        let reference = partial_density(x, 200).unwrap();
        prop_assert!((b.value - reference).abs() <= eps + 1e-15);
        if b.terms_used > 1 {
            let fewer = density_g(x, TruncationControl::terms(b.terms_used - 1)).unwrap();
            prop_assert!(fewer.error_bound > eps);
        }
    }

    #[test]
    fn horizon_scaling(x in 0.01f64..20.0, t in 0.2f64..5.0) {
        let p = ProcessParams::new(t, Convention::Paper).unwrap();
        let trunc = TruncationControl::tolerance(1e-13);
        // both values sit within their own bounds of the same quantity
        let f = density_f(x, &p, trunc).unwrap();
        let g = density_g(x / (t * t), trunc).unwrap();
        let slack = f.error_bound * t * t + g.error_bound + 1e-14 * (1.0 + g.value);
        prop_assert!((f.value * t * t - g.value).abs() <= slack);
        let tail = tail_prob(x, &p, trunc).unwrap();
        let unit = tail_prob(x / (t * t), &ProcessParams::unit(), trunc).unwrap();
        prop_assert!((tail.probability - unit.probability).abs() <= tail.error_bound + unit.error_bound + 1e-14);
    }

    #[test]
    fn conventions_differ_by_factor_two(x in 0.01f64..20.0) {
        let cm = ProcessParams::new(1.0, Convention::CameronMartin).unwrap();
        let trunc = TruncationControl::tolerance(1e-13);
        let a = density_f(x, &cm, trunc).unwrap().value;
        let b = density_f(x / 2.0, &ProcessParams::unit(), trunc).unwrap().value / 2.0;
        prop_assert!((a - b).abs() <= 1e-13 * (1.0 + b));
        let ta = tail_prob(x, &cm, trunc).unwrap().probability;
        let tb = tail_prob(x / 2.0, &ProcessParams::unit(), trunc).unwrap().probability;
        prop_assert!((ta - tb).abs() <= 1e-14);
    }

    #[test]
    fn cdf_and_tail_are_complementary(c in 0.001f64..50.0, n in 1usize..60) {
        let p = ProcessParams::unit();
        let r = cdf(c, &p, n).unwrap();
        let t = tail_prob(c, &p, TruncationControl::terms(n)).unwrap();
        prop_assert!((0.0..=1.0).contains(&t.probability));
        prop_assert!((t.probability - (1.0 - r.value).clamp(0.0, 1.0)).abs() <= 1e-15);
        prop_assert_eq!(t.error_bound, r.error_bound);
        prop_assert_eq!(t.error_bound, tail_error_bound(c, &p, n).unwrap());
    }

    #[test]
    fn tail_bound_dominates(log_c in -2.0f64..2.0, log_t in -1.0f64..1.0, n in 1usize..12) {
        let p = ProcessParams::new(10f64.powf(log_t), Convention::Paper).unwrap();
        let c = 10f64.powf(log_c);
        let a = tail_prob(c, &p, TruncationControl::terms(n)).unwrap().probability;
        let b = tail_prob(c, &p, TruncationControl::terms(n + 20)).unwrap().probability;
        prop_assert!((a - b).abs() <= tail_error_bound(c, &p, n).unwrap() + 1e-14);
    }

    #[test]
    fn cdf_is_monotone(c in 0.01f64..8.0, dc in 1e-3f64..1.0) {
        let p = ProcessParams::unit();
        let trunc = TruncationControl::tolerance(1e-15);
        let lo = wiener_l2::cdf_with(c, &p, trunc).unwrap().value;
        let hi = wiener_l2::cdf_with(c + dc, &p, trunc).unwrap().value;
        prop_assert!(hi >= lo - 4e-15, "{} -> {}", lo, hi);
    }

    #[test]
    fn cdf_derivative_is_density(c in 0.05f64..10.0) {
        let p = ProcessParams::unit();
        let trunc = TruncationControl::tolerance(1e-15);
        let h = 1e-4 * c;
        let up = wiener_l2::cdf_with(c + h, &p, trunc).unwrap().value;
        let down = wiener_l2::cdf_with(c - h, &p, trunc).unwrap().value;
        let f = density_f(c, &p, trunc).unwrap().value;
        prop_assert!(((up - down) / (2.0 * h) - f).abs() <= 1e-6 * (1.0 + f));
    }

    #[test]
    fn generating_function_is_completely_monotone(a in 0.0f64..50.0, d in 1e-3f64..50.0) {
        let q = |l: f64| generating_function(num_complex::Complex64::new(l, 0.0), 1.0).unwrap();
        let (qa, qb) = (q(a), q(a + d));
        prop_assert!(qa.im == 0.0 && qb.im == 0.0);
        prop_assert!(qb.re < qa.re && qb.re > 0.0 && qa.re <= 1.0);
    }

    #[test]
    fn grid_display_round_trips(lo in 1e-3f64..10.0, span in 1e-3f64..100.0, count in 2usize..200, log in any::<bool>()) {
        let text = format!("{}:{}:{}{}", lo, lo + span, count, if log { ":log" } else { "" });
        let g: Grid = text.parse().unwrap();
        prop_assert_eq!(g.to_string().parse::<Grid>().unwrap(), g);
        let pts = g.points();
        prop_assert_eq!(pts.len(), count);
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(pts[0], lo);
        prop_assert_eq!(pts[count - 1], lo + span);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_oracle_agrees(log_x in -1.5f64..1.5) {
        let x = 10f64.powf(log_x);
        let q = quadrature_density(x, &QuadratureConfig::default()).unwrap();
        let s = density_g(x, TruncationControl::tolerance(1e-13)).unwrap().value;
        prop_assert!((q - s).abs() <= 1e-9, "x={} quadrature={} series={}", x, q, s);
    }
}

#[test]
fn exact_sum_of_rational_coefficients() {
    // sum_{l<N} (-1)^l c_l in exact arithmetic, against the library's float coefficients
    let mut c = BigRational::from_integer(BigInt::from(1));
    let mut total = BigRational::zero();
    let mut floats = Vec::new();
    for l in 0..300u32 {
        if l % 2 == 0 {
            total += &c;
        } else {
            total -= &c;
        }
        floats.push(if l % 2 == 0 {
            wiener_l2::coeff_c(l as usize)
        } else {
            -wiener_l2::coeff_c(l as usize)
        });
        c *= BigRational::new(BigInt::from(2 * l + 1), BigInt::from(2 * l + 2));
    }
    let s = compensated_sum(floats);
    assert!((s - total.to_f64().unwrap()).abs() < 1e-14);
}
