//! Alternating-series evaluation of the scaled density `g(x)`.
//!
//! The density is
//!
//! ```text
//! g(x) = sqrt(2/pi) * sum_{l>=0} (-1)^l a_l h_l(x)
//! a_l  = c_l (l + 1/4),            c_l = (2l)! / (4^l (l!)^2)
//! h_l  = x^{-3/2} exp(-(l + 1/4)^2 / x)
//! ```
//!
//! and the error of the partial sum with `N` terms is bounded by the
//! magnitude of the first omitted term, `sqrt(2/pi) a_N h_N(x)`.

use std::f64::consts::{E, FRAC_2_PI};

use crate::error::{require_positive, Error, Result};
use crate::summation::CompensatedSum;

/// Default cap on the number of series terms in tolerance mode.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// How many terms of a series to take.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationControl {
    /// Use exactly this many terms (`N >= 1`).
    FixedTerms(usize),
    /// Use the fewest terms whose rigorous error bound is `<= eps`,
    /// giving up after `max_terms`.
    Tolerance { eps: f64, max_terms: usize },
}

impl TruncationControl {
    pub fn terms(n: usize) -> Self {
        TruncationControl::FixedTerms(n)
    }

    pub fn tolerance(eps: f64) -> Self {
        TruncationControl::Tolerance {
            eps,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        match self {
            TruncationControl::Tolerance { eps, .. } => {
                TruncationControl::Tolerance { eps, max_terms }
            }
            fixed => fixed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TruncationControl::FixedTerms(0) => Err(Error::Domain {
                name: "N",
                value: 0.0,
                requirement: "term count must be at least 1",
            }),
            TruncationControl::FixedTerms(_) => Ok(()),
            TruncationControl::Tolerance { eps, max_terms } => {
                require_positive("eps", eps)?;
                if max_terms == 0 {
                    return Err(Error::Domain {
                        name: "max_terms",
                        value: 0.0,
                        requirement: "must be at least 1",
                    });
                }
                Ok(())
            }
        }
    }
}

/// A series evaluation together with a rigorous bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms_used: usize,
}

/// `c_l = (2l)! / (4^l (l!)^2)`, by the recurrence `c_{l+1} = c_l (2l+1)/(2l+2)`.
pub fn coeff_c(l: usize) -> f64 {
    CentralCoefficients::new().nth(l).unwrap_or(0.0)
}

/// `a_l = c_l (l + 1/4)`.
pub fn coeff_a(l: usize) -> f64 {
    coeff_c(l) * shifted(l)
}

/// Iterator over `c_0, c_1, c_2, ...`.
#[derive(Debug, Clone)]
pub struct CentralCoefficients {
    l: usize,
    current: f64,
}

impl CentralCoefficients {
    pub fn new() -> Self {
        Self { l: 0, current: 1.0 }
    }
}

impl Default for CentralCoefficients {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralCoefficients {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.current;
        let l = self.l as f64;
        self.current *= (2.0 * l + 1.0) / (2.0 * l + 2.0);
        self.l += 1;
        Some(out)
    }
}

#[inline]
fn shifted(l: usize) -> f64 {
    l as f64 + 0.25
}

/// `h_l(x) = x^{-3/2} exp(-(l+1/4)^2 / x)`, flushed to exactly zero when the
/// exponential underflows.
pub fn term_h(l: usize, x: f64) -> Result<f64> {
    require_positive("x", x)?;
    Ok(term_h_unchecked(l, x))
}

#[inline]
fn term_h_unchecked(l: usize, x: f64) -> f64 {
    let b = shifted(l);
    let e = (-(b * b) / x).exp();
    if e == 0.0 {
        // x is tiny here, so x^{-3/2} alone could overflow.
        0.0
    } else {
        e / (x * x.sqrt())
    }
}

/// Location `(2/3)(N + 1/4)^2` of the unique maximum of `h_N`.
pub fn argmax_h(n: usize) -> f64 {
    let b = shifted(n);
    2.0 * b * b / 3.0
}

/// `sqrt(2/(pi x^3)) c_N (N + 1/4) exp(-(N+1/4)^2/x)`, the bound on
/// `|g(x) - g_{N-1}(x)|`.
pub fn remainder_bound(n: usize, x: f64) -> Result<f64> {
    require_terms(n)?;
    require_positive("x", x)?;
    Ok(FRAC_2_PI.sqrt() * coeff_a(n) * term_h_unchecked(n, x))
}

/// `(3 / (2 e^2)) N^{-5/2}`, which dominates `remainder_bound(N, x)` for every `x > 0`.
pub fn uniform_remainder_bound(n: usize) -> Result<f64> {
    require_terms(n)?;
    Ok(1.5 / (E * E) * (n as f64).powf(-2.5))
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

/// Smallest `N >= 1` with `remainder_bound(N, x) <= eps`, by incremental scan.
pub fn choose_truncation(x: f64, eps: f64, max_terms: usize) -> Result<usize> {
    require_positive("x", x)?;
    require_positive("eps", eps)?;
    let prefactor = FRAC_2_PI.sqrt();
    let mut c = CentralCoefficients::new();
    c.next();
    for (n, c_n) in (1..=max_terms).zip(c) {
        if prefactor * c_n * shifted(n) * term_h_unchecked(n, x) <= eps {
            return Ok(n);
        }
    }
    Err(Error::IterationLimit {
        limit: max_terms,
        eps,
    })
}

/// The partial sum `g_{N-1}(x)` with `terms` terms, without any clamping.
pub fn partial_density(x: f64, terms: usize) -> Result<f64> {
    require_positive("x", x)?;
    require_terms(terms)?;
    Ok(partial_density_unchecked(x, terms))
}

fn partial_density_unchecked(x: f64, terms: usize) -> f64 {
    // the prefactor goes into each term so the result is rounded only once
    let k = FRAC_2_PI.sqrt();
    let mut acc = CompensatedSum::new();
    for (l, c_l) in CentralCoefficients::new().take(terms).enumerate() {
        let h = term_h_unchecked(l, x);
        if h == 0.0 {
            // every later term underflows as well
            break;
        }
        let t = k * c_l * shifted(l) * h;
        acc.add(if l % 2 == 0 { t } else { -t });
    }
    acc.value()
}

/// The scaled density `g(x)` with a rigorous truncation bound.
///
/// A partial sum that comes out negative by no more than its error bound is
/// clamped to zero; a larger negative value is returned unchanged.
///
/// `error_bound` covers truncation only. The terms cancel heavily for large
/// `x`, so the rounding error grows to roughly `1e-17 * sum |terms|`; past
/// `x ~ 20` that floor (around `1e-19`) exceeds the density itself.
pub fn density_g(x: f64, trunc: TruncationControl) -> Result<BoundedValue> {
    require_positive("x", x)?;
    trunc.validate()?;
    let terms = match trunc {
        TruncationControl::FixedTerms(n) => n,
        TruncationControl::Tolerance { eps, max_terms } => choose_truncation(x, eps, max_terms)?,
    };
    let error_bound = FRAC_2_PI.sqrt() * coeff_a(terms) * term_h_unchecked(terms, x);
    let mut value = partial_density_unchecked(x, terms);
    if value < 0.0 && -value <= error_bound {
        value = 0.0;
    }
    Ok(BoundedValue {
        value,
        error_bound,
        terms_used: terms,
    })
}
