//! Density, distribution function and tail probabilities of the squared
//! L2 norm `J_T = int_0^T w(t)^2 dt` of a Wiener path, with rigorous
//! truncation error bounds.
//!
//! The law computed here is the one whose Laplace transform is
//! `E exp(-lambda X) = cosh(sqrt(lambda) T)^{-1/2}`. For a Brownian motion
//! with `E w(t)^2 = t` that is the law of `X = J_T / 2`; select
//! [`Convention::CameronMartin`] to work with `J_T` itself.
//!
//! - [`series`]: the alternating series for the scaled density and its
//!   remainder bounds.
//! - [`distribution`]: density, CDF and tail probability for a given horizon.
//! - [`oracles`]: independent checks (integral representation, Laplace
//!   transform, Monte Carlo).
//! - [`cli`]: table generation and the validation report behind the
//!   `wiener-l2` binary.

pub mod cli;
pub mod distribution;
pub mod error;
pub mod oracles;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod summation;

pub use distribution::{
    cdf, cdf_with, density_f, tail_error_bound, tail_error_bound_sharp, tail_error_bound_uniform,
    tail_prob, Convention, ProcessParams, TailResult,
};
pub use error::{Error, Result};
pub use series::{
    argmax_h, choose_truncation, coeff_a, coeff_c, density_g, remainder_bound, term_h,
    uniform_remainder_bound, BoundedValue, TruncationControl,
};
pub use special::erfc;
