//! Monte Carlo simulation of `J_T = int_0^T w(t)^2 dt`.
//!
//! Each path draws its increments from its own ChaCha8 stream, selected by
//! the path index, so the samples do not depend on how paths are split
//! across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::distribution::{tail_prob, Convention, ProcessParams};
use crate::error::{require_positive, Error, Result};
use crate::series::TruncationControl;
use crate::summation::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub paths: usize,
    /// Uniform time steps per path.
    pub steps: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.paths < 1 {
            return Err(Error::Config("Monte Carlo needs at least one path".into()));
        }
        if self.steps < 2 {
            return Err(Error::Config(
                "Monte Carlo needs at least two time steps".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    /// `|mean - target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.mean - target).abs();
        if self.std_error > 0.0 {
            d / self.std_error
        } else if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Trapezoidal approximation of `int_0^T w^2 dt` for one path. `w` starts at
/// zero and moves by independent `N(0, T/steps)` increments.
pub fn sample_path_functional(seed: u64, path: u64, steps: usize, horizon: f64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    let dt = horizon / steps as f64;
    let sd = dt.sqrt();
    let mut w = 0.0f64;
    let mut interior = 0.0f64;
    for _ in 0..steps - 1 {
        let z: f64 = StandardNormal.sample(&mut rng);
        w += sd * z;
        interior += w * w;
    }
    let z: f64 = StandardNormal.sample(&mut rng);
    w += sd * z;
    dt * (interior + 0.5 * w * w)
}

/// One sample per path, in path order. Under [`Convention::Paper`] each
/// sample is `J_T / 2`; under [`Convention::CameronMartin`] it is `J_T`.
pub fn mc_sample_functional(p: &ProcessParams, cfg: &McConfig) -> Result<Vec<f64>> {
    require_positive("T", p.horizon)?;
    cfg.validate()?;
    let scale = p.convention.scale() / 2.0;
    let (seed, steps, horizon) = (cfg.seed, cfg.steps, p.horizon);
    Ok((0..cfg.paths as u64)
        .into_par_iter()
        .map(|path| sample_path_functional(seed, path, steps, horizon) * scale)
        .collect())
}

fn proportion(hits: usize, n: usize) -> McEstimate {
    let p = hits as f64 / n as f64;
    McEstimate {
        mean: p,
        std_error: (p * (1.0 - p) / n as f64).sqrt(),
        samples: n,
    }
}

/// Fraction of sampled values exceeding `c`, with its binomial standard error.
pub fn mc_tail_estimate(c: f64, p: &ProcessParams, cfg: &McConfig) -> Result<McEstimate> {
    Ok(mc_tail_estimates(&[c], p, cfg)?.remove(0))
}

/// Tail fractions for several thresholds from a single set of paths.
pub fn mc_tail_estimates(cs: &[f64], p: &ProcessParams, cfg: &McConfig) -> Result<Vec<McEstimate>> {
    let samples = mc_sample_functional(p, cfg)?;
    Ok(tail_fractions(&samples, cs))
}

pub(crate) fn tail_fractions(samples: &[f64], cs: &[f64]) -> Vec<McEstimate> {
    cs.iter()
        .map(|&c| proportion(samples.iter().filter(|&&v| v > c).count(), samples.len()))
        .collect()
}

/// Histogram estimate of the density at `x`: the fraction of samples in
/// `(x - h, x + h]` divided by `2h`.
pub fn mc_density_estimate(
    x: f64,
    half_width: f64,
    p: &ProcessParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    require_positive("half_width", half_width)?;
    let samples = mc_sample_functional(p, cfg)?;
    let hits = samples
        .iter()
        .filter(|&&v| v > x - half_width && v <= x + half_width)
        .count();
    let frac = proportion(hits, samples.len());
    let w = 2.0 * half_width;
    Ok(McEstimate {
        mean: frac.mean / w,
        std_error: frac.std_error / w,
        samples: frac.samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMoments {
    pub mean: McEstimate,
    pub variance: McEstimate,
}

/// Sample mean and variance, each with a standard error. The variance error
/// uses the fourth central moment: `sqrt((m4 - s^4) / n)`.
pub fn mc_moments(samples: &[f64]) -> Result<SampleMoments> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::Config("moments need at least two samples".into()));
    }
    let nf = n as f64;
    let mean = compensated_sum(samples.iter().copied()) / nf;
    let m2 = compensated_sum(samples.iter().map(|v| (v - mean).powi(2))) / nf;
    let m4 = compensated_sum(samples.iter().map(|v| (v - mean).powi(4))) / nf;
    let var = m2 * nf / (nf - 1.0);
    Ok(SampleMoments {
        mean: McEstimate {
            mean,
            std_error: (var / nf).sqrt(),
            samples: n,
        },
        variance: McEstimate {
            mean: var,
            std_error: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
            samples: n,
        },
    })
}

/// Tail estimates at `steps` and `2 * steps`, used to bound the time
/// discretization bias.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonCheck {
    pub coarse: McEstimate,
    pub fine: McEstimate,
}

impl RichardsonCheck {
    pub fn difference(&self) -> f64 {
        (self.fine.mean - self.coarse.mean).abs()
    }

    pub fn combined_std_error(&self) -> f64 {
        self.coarse.std_error.hypot(self.fine.std_error)
    }

    /// Whether the two estimates agree within `k` combined standard errors.
    pub fn is_stable(&self, k: f64) -> bool {
        self.difference() <= k * self.combined_std_error()
    }
}

pub fn mc_tail_richardson(c: f64, p: &ProcessParams, cfg: &McConfig) -> Result<RichardsonCheck> {
    let coarse = mc_tail_estimate(c, p, cfg)?;
    let fine_cfg = McConfig {
        steps: cfg.steps * 2,
        ..*cfg
    };
    let fine = mc_tail_estimate(c, p, &fine_cfg)?;
    Ok(RichardsonCheck { coarse, fine })
}

/// Sum of squared z-scores of simulated tail fractions of the raw functional
/// `J_T` against the series tail probability, under two readings of the
/// series: as the law of `J_T` itself, and as the law of `J_T / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionFit {
    pub as_raw_chi2: f64,
    pub as_half_chi2: f64,
}

impl ConventionFit {
    /// The convention under which the series describes the simulated `J_T`.
    /// `CameronMartin` means the series variable is `J_T / 2`.
    pub fn raw_functional_convention(&self) -> Convention {
        if self.as_half_chi2 < self.as_raw_chi2 {
            Convention::CameronMartin
        } else {
            Convention::Paper
        }
    }
}

/// Fit simulated tail fractions of `J_T` at thresholds `cs` against both
/// readings of the series.
pub fn resolve_convention(cs: &[f64], horizon: f64, cfg: &McConfig) -> Result<ConventionFit> {
    let raw = ProcessParams::new(horizon, Convention::CameronMartin)?;
    let samples = mc_sample_functional(&raw, cfg)?;
    let estimates = tail_fractions(&samples, cs);
    let series = ProcessParams::new(horizon, Convention::Paper)?;
    let trunc = TruncationControl::tolerance(1e-10);
    let mut fit = ConventionFit {
        as_raw_chi2: 0.0,
        as_half_chi2: 0.0,
    };
    for (&c, est) in cs.iter().zip(&estimates) {
        let se = est.std_error.max(1.0 / cfg.paths as f64);
        let as_raw = tail_prob(c, &series, trunc)?.probability;
        let as_half = tail_prob(c / 2.0, &series, trunc)?.probability;
        fit.as_raw_chi2 += ((est.mean - as_raw) / se).powi(2);
        fit.as_half_chi2 += ((est.mean - as_half) / se).powi(2);
    }
    Ok(fit)
}
