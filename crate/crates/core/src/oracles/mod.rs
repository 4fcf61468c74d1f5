//! Checks that do not go through the series: the generating function, a
//! direct quadrature of the density's real-axis integral representation,
//! and Monte Carlo simulation of Wiener paths.

mod monte_carlo;

pub use monte_carlo::{
    mc_density_estimate, mc_moments, mc_sample_functional, mc_tail_estimate, mc_tail_estimates,
    mc_tail_richardson, resolve_convention, sample_path_functional, ConventionFit, McConfig,
    McEstimate, RichardsonCheck, SampleMoments,
};

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};
use crate::quadrature::{adaptive_integrate, GaussLegendre};
use crate::series::{density_g, TruncationControl};
use crate::summation::CompensatedSum;

/// `Q_T(lambda) = cosh(sqrt(lambda) T)^{-1/2}` on the principal branch, cut
/// along the negative real axis.
pub fn generating_function(lambda: Complex64, horizon: f64) -> Result<Complex64> {
    require_positive("T", horizon)?;
    if lambda.im == 0.0 && lambda.re < 0.0 {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda.re,
            requirement: "must not lie on the negative real axis",
        });
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::Domain {
            name: "lambda",
            value: f64::NAN,
            requirement: "must be finite",
        });
    }
    let q = (lambda * (horizon * horizon)).sqrt();
    let ch = q.cosh();
    if ch.re.is_finite() && ch.im.is_finite() {
        Ok(ch.powf(-0.5))
    } else {
        // cosh overflowed: cosh(q)^{-1/2} = sqrt(2) e^{-q/2} (1 + e^{-2q})^{-1/2}
        Ok(SQRT_2 * (-q / 2.0).exp() / (1.0 + (-2.0 * q).exp()).sqrt())
    }
}

/// Settings for [`quadrature_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Half-width of the integration interval. `None` picks the smallest
    /// `s_max` with `exp(-2 x s_max^2) < 1e-300`.
    pub s_max: Option<f64>,
    /// Initial node count (at least 16); doubled until two successive
    /// results differ by less than `tolerance`.
    pub nodes: usize,
    pub tolerance: f64,
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            s_max: None,
            nodes: 256,
            tolerance: 1e-11,
            max_nodes: 1 << 22,
        }
    }
}

const PANEL_ORDER: usize = 16;
const IMAGINARY_RESIDUAL_LIMIT: f64 = 1e-10;

/// Scaled density `g(x)` from the real-axis integral
///
/// ```text
/// g(x) = (sqrt(2)/pi) exp(-1/(16x))
///        * int_R (i s + 1/(4x)) exp(-x s^2) (1 + exp(-1/(2x)) exp(-2 i s))^{-1/2} ds
/// ```
///
/// evaluated by composite Gauss-Legendre panels on `[-s_max, s_max]`.
///
/// Since `exp(-1/(2x)) < 1`, `1 + exp(-1/(2x)) exp(-2is)` stays in the right
/// half-plane, so the principal square root is the branch that is continuous
/// along the real line and positive at `s = 0`.
pub fn quadrature_density(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_positive("x", x)?;
    if cfg.nodes < PANEL_ORDER {
        return Err(Error::Config(format!(
            "quadrature needs at least {PANEL_ORDER} nodes"
        )));
    }
    let s_max = match cfg.s_max {
        Some(s) => require_positive("s_max", s)?,
        None => ((300.0 * std::f64::consts::LN_10) / (2.0 * x)).sqrt(),
    };
    let rule = GaussLegendre::new(PANEL_ORDER);
    let r = (-1.0 / (2.0 * x)).exp();
    let shift = 1.0 / (4.0 * x);
    let integrand = |s: f64| -> Complex64 {
        let denom = Complex64::new(1.0, 0.0) + r * Complex64::new(0.0, -2.0 * s).exp();
        Complex64::new(shift, s) * (-x * s * s).exp() / denom.sqrt()
    };
    let integrate = |panels: usize| -> Complex64 {
        let width = 2.0 * s_max / panels as f64;
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for k in 0..panels {
            let a = -s_max + k as f64 * width;
            let mid = a + 0.5 * width;
            for (node, w) in rule.nodes() {
                let v = integrand(mid + 0.5 * width * node) * (w * 0.5 * width);
                re.add(v.re);
                im.add(v.im);
            }
        }
        Complex64::new(re.value(), im.value())
    };
    let prefactor = SQRT_2 / PI * (-1.0 / (16.0 * x)).exp();

    let mut panels = cfg.nodes.div_ceil(PANEL_ORDER);
    let mut previous = prefactor * integrate(panels);
    loop {
        panels *= 2;
        let current = prefactor * integrate(panels);
        if (current.re - previous.re).abs() < cfg.tolerance {
            if current.im.abs() > IMAGINARY_RESIDUAL_LIMIT {
                return Err(Error::Accuracy(format!(
                    "imaginary residual {:e} at x = {x}",
                    current.im
                )));
            }
            return Ok(current.re);
        }
        if panels * PANEL_ORDER > cfg.max_nodes {
            return Err(Error::Accuracy(format!(
                "quadrature did not settle below {:e} with {} nodes at x = {x}",
                cfg.tolerance,
                panels * PANEL_ORDER
            )));
        }
        previous = current;
    }
}

/// `int_0^inf exp(-lambda x) g(x) dx` by adaptive quadrature of the series
/// density (evaluated to `1e-14`). Should reproduce `generating_function(lambda, 1)`.
pub fn laplace_transform_of_density(lambda: f64) -> Result<f64> {
    require_positive("lambda", lambda)?;
    let trunc = TruncationControl::tolerance(1e-14);
    // g(x) ~ exp(-pi^2 x / 4) for large x, so the tail past 80 is below 1e-80.
    let integrand = |x: f64| -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let g = density_g(x, trunc).map(|b| b.value).unwrap_or(f64::NAN);
        (-lambda * x).exp() * g
    };
    let r = adaptive_integrate(
        integrand,
        &[
            0.0, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0,
        ],
        1e-14,
        1e-13,
        20_000,
    );
    if !r.value.is_finite() {
        return Err(Error::Accuracy("non-finite Laplace transform".into()));
    }
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::density_g;

    fn q1(l: f64) -> f64 {
        generating_function(Complex64::new(l, 0.0), 1.0).unwrap().re
    }

    #[test]
    fn generating_function_basics() {
        assert_eq!(
            generating_function(Complex64::new(0.0, 0.0), 1.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let mut last = 1.0;
        for l in [0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1e4] {
            let v = q1(l);
            assert!(v > 0.0 && v < last);
            last = v;
        }
        // cosh(1000) overflows; the exponential form gives sqrt(2) e^{-500}
        let far = q1(1e6);
        assert!(((far - 2f64.sqrt() * (-500.0f64).exp()) / far).abs() < 1e-12);
        assert!(generating_function(Complex64::new(-1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn mean_from_generating_function() {
        let h = 1e-6;
        let mean = -(q1(h) - q1(0.0)) / h;
        assert!((mean - 0.25).abs() < 1e-5);
    }

    #[test]
    fn generating_function_scaling() {
        for &t in &[0.3, 1.7, 2.0] {
            for &l in &[
                Complex64::new(0.5, 0.0),
                Complex64::new(2.0, 3.0),
                Complex64::new(0.0, -4.0),
            ] {
                let a = generating_function(l, t).unwrap();
                let b = generating_function(l * (t * t), 1.0).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn quadrature_agrees_with_series() {
        let cfg = QuadratureConfig::default();
        for x in [0.05, 0.3, 1.0, 10.0] {
            let q = quadrature_density(x, &cfg).unwrap();
            let s = density_g(x, TruncationControl::tolerance(1e-12))
                .unwrap()
                .value;
            assert!((q - s).abs() < 1e-9, "x={x}: quadrature {q} series {s}");
        }
    }

    #[test]
    fn quadrature_config_errors() {
        let bad = QuadratureConfig {
            nodes: 8,
            ..Default::default()
        };
        assert!(quadrature_density(1.0, &bad).is_err());
        assert!(quadrature_density(0.0, &QuadratureConfig::default()).is_err());
        let capped = QuadratureConfig {
            max_nodes: 16,
            nodes: 16,
            tolerance: 1e-300,
            ..Default::default()
        };
        assert!(matches!(
            quadrature_density(1.0, &capped),
            Err(Error::Accuracy(_))
        ));
    }

    #[test]
    fn laplace_round_trip() {
        for l in [0.5, 1.0, 2.0, 5.0] {
            let numeric = laplace_transform_of_density(l).unwrap();
            assert!(
                (numeric - q1(l)).abs() < 1e-7,
                "lambda={l}: {numeric} vs {}",
                q1(l)
            );
        }
    }
}
