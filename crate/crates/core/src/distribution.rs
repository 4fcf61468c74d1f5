//! Distribution of the functional for a time horizon `T`.
//!
//! With `g` the scaled density from [`crate::series`], the density for
//! horizon `T` is `f(x) = T^{-2} g(x / T^2)`. Integrating the partial sums
//! term by term, using
//! `int_0^y x^{-3/2} exp(-b^2/x) dx = (sqrt(pi)/b) erfc(b / sqrt(y))`,
//! gives the CDF of the `N`-term approximation in closed form:
//!
//! ```text
//! R_N(c) = sqrt(2) * sum_{l<N} (-1)^l c_l erfc((l + 1/4) T / sqrt(c))
//! ```
//!
//! and the integrated remainder bound
//! `sqrt(2) c_N erfc((N + 1/4) T / sqrt(c))`.

use std::f64::consts::{E, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::series::{coeff_c, density_g, BoundedValue, CentralCoefficients, TruncationControl};
use crate::special::erfc;
use crate::summation::CompensatedSum;

/// Which normalization of the functional the distribution describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// The law with Laplace transform `cosh(sqrt(lambda) T)^{-1/2}`,
    /// i.e. `J_T / 2` for a Brownian motion with `E w(t)^2 = t`.
    #[default]
    Paper,
    /// The law of `J_T` itself, Laplace transform `cosh(sqrt(2 lambda) T)^{-1/2}`.
    CameronMartin,
}

impl Convention {
    /// Factor `k` such that the implemented variable is `k` times the
    /// `Paper` variable.
    pub fn scale(self) -> f64 {
        match self {
            Convention::Paper => 1.0,
            Convention::CameronMartin => 2.0,
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Convention::Paper),
            "cameron-martin" | "cameron_martin" => Ok(Convention::CameronMartin),
            other => Err(Error::Config(format!("unknown convention `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    /// Time horizon `T > 0`.
    pub horizon: f64,
    pub convention: Convention,
}

impl ProcessParams {
    pub fn new(horizon: f64, convention: Convention) -> Result<Self> {
        require_positive("T", horizon)?;
        Ok(Self {
            horizon,
            convention,
        })
    }

    pub fn unit() -> Self {
        Self {
            horizon: 1.0,
            convention: Convention::Paper,
        }
    }

    fn validate(&self) -> Result<()> {
        require_positive("T", self.horizon).map(|_| ())
    }

    /// Map a threshold on the user's variable to the argument of the scaled
    /// distribution: `c / (k T^2)`.
    fn scaled_threshold(&self, c: f64) -> f64 {
        let t = self.horizon;
        c / self.convention.scale() / (t * t)
    }
}

impl Default for ProcessParams {
    fn default() -> Self {
        Self::unit()
    }
}

/// A tail probability with its rigorous truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailResult {
    pub probability: f64,
    pub error_bound: f64,
    pub terms_used: usize,
}

/// Density of the functional at `x`, scaled from `density_g`.
pub fn density_f(x: f64, p: &ProcessParams, trunc: TruncationControl) -> Result<BoundedValue> {
    require_positive("x", x)?;
    p.validate()?;
    let t2 = p.horizon * p.horizon;
    let k = p.convention.scale();
    // Tolerances apply to f, so g is needed to eps * k T^2.
    let inner = match trunc {
        TruncationControl::Tolerance { eps, max_terms } => TruncationControl::Tolerance {
            eps: eps * k * t2,
            max_terms,
        },
        fixed => fixed,
    };
    let g = density_g(x / k / t2, inner)?;
    Ok(BoundedValue {
        value: g.value / t2 / k,
        error_bound: g.error_bound / t2 / k,
        terms_used: g.terms_used,
    })
}

fn require_terms(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain {
            name: "N",
            value: 0.0,
            requirement: "term count must be at least 1",
        })
    } else {
        Ok(())
    }
}

#[inline]
fn erfc_arg(l: usize, scaled: f64) -> f64 {
    (l as f64 + 0.25) / scaled.sqrt()
}

/// `R_N(c)`, the CDF of the `N`-term density approximation, in closed form.
///
/// The value is not clamped: for small `N` it may leave `[0, 1]` by no more
/// than its error bound.
pub fn cdf(c: f64, p: &ProcessParams, n: usize) -> Result<BoundedValue> {
    require_positive("c", c)?;
    p.validate()?;
    require_terms(n)?;
    let y = p.scaled_threshold(c);
    Ok(cdf_scaled(y, n))
}

fn cdf_scaled(y: f64, n: usize) -> BoundedValue {
    let mut acc = CompensatedSum::new();
    for (l, c_l) in CentralCoefficients::new().take(n).enumerate() {
        let e = erfc(erfc_arg(l, y));
        if e == 0.0 {
            // later terms underflow as well
            break;
        }
        let t = c_l * e;
        acc.add(if l % 2 == 0 { t } else { -t });
    }
    BoundedValue {
        value: SQRT_2 * acc.value(),
        error_bound: SQRT_2 * coeff_c(n) * erfc(erfc_arg(n, y)),
        terms_used: n,
    }
}

/// CDF with the term count taken from `trunc`; in tolerance mode the
/// smallest `N` whose [`tail_error_bound`] is `<= eps`.
pub fn cdf_with(c: f64, p: &ProcessParams, trunc: TruncationControl) -> Result<BoundedValue> {
    require_positive("c", c)?;
    p.validate()?;
    trunc.validate()?;
    let n = match trunc {
        TruncationControl::FixedTerms(n) => n,
        TruncationControl::Tolerance { eps, max_terms } => {
            choose_tail_truncation(p.scaled_threshold(c), eps, max_terms)?
        }
    };
    cdf(c, p, n)
}

/// `Pr{X > c}` approximated by `1 - R_N(c)`, clamped to `[0, 1]`.
pub fn tail_prob(c: f64, p: &ProcessParams, trunc: TruncationControl) -> Result<TailResult> {
    let r = cdf_with(c, p, trunc)?;
    Ok(TailResult {
        probability: (1.0 - r.value).clamp(0.0, 1.0),
        error_bound: r.error_bound,
        terms_used: r.terms_used,
    })
}

/// Smallest `N` with `sqrt(2) c_N erfc((N+1/4)/sqrt(y)) <= eps`. The bound is
/// strictly decreasing in `N`, so the first hit is the answer.
fn choose_tail_truncation(y: f64, eps: f64, max_terms: usize) -> Result<usize> {
    let mut coeffs = CentralCoefficients::new();
    coeffs.next();
    for (n, c_n) in (1..=max_terms).zip(coeffs) {
        if SQRT_2 * c_n * erfc(erfc_arg(n, y)) <= eps {
            return Ok(n);
        }
    }
    Err(Error::IterationLimit {
        limit: max_terms,
        eps,
    })
}

/// Exact integral of the density remainder bound over `(0, c / T^2]`:
/// `(sqrt(2) a_N / (N + 1/4)) erfc(T (N + 1/4) / sqrt(c))`.
pub fn tail_error_bound(c: f64, p: &ProcessParams, n: usize) -> Result<f64> {
    require_positive("c", c)?;
    p.validate()?;
    require_terms(n)?;
    let y = p.scaled_threshold(c);
    Ok(SQRT_2 * coeff_c(n) * erfc(erfc_arg(n, y)))
}

/// `sqrt(2 / (e N^3))`, the simplification of [`tail_error_bound`] obtained
/// from `erfc <= 1`.
///
/// This does not dominate `tail_error_bound` for every `(c, T)`: as
/// `c / T^2 -> inf` the exact bound tends to `sqrt(2) c_N`, which exceeds this
/// value for every `N >= 2`.
pub fn tail_error_bound_uniform(n: usize) -> Result<f64> {
    require_terms(n)?;
    let n = n as f64;
    Ok((2.0 / (E * n * n * n)).sqrt())
}

/// `sqrt(2c / (pi e)) (T N^{5/2})^{-1} exp(-(T N)^2 / c)`, the simplification
/// of [`tail_error_bound`] obtained from `erfc(z) < exp(-z^2) / (sqrt(pi) z)`.
///
/// Like the uniform form, it falls below the exact bound once `c / T^2` is
/// large compared with `N^2`.
pub fn tail_error_bound_sharp(c: f64, p: &ProcessParams, n: usize) -> Result<f64> {
    require_positive("c", c)?;
    p.validate()?;
    require_terms(n)?;
    let c = c / p.convention.scale();
    let t = p.horizon;
    let nf = n as f64;
    Ok((2.0 * c / (PI * E)).sqrt() / (t * nf.powf(2.5)) * (-(t * nf) * (t * nf) / c).exp())
}
