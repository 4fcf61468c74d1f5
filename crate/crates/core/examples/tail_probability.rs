//! Tail probabilities `P(X > c)` from the closed-form erfc series, in both
//! conventions, together with the exact tail error bound.
//!
//! ```text
//! cargo run --example tail_probability
//! ```

use wiener_l2::{cdf_with, tail_prob, Convention, ProcessParams, TruncationControl};

fn main() -> wiener_l2::Result<()> {
    let trunc = TruncationControl::tolerance(1e-12);
    let paper = ProcessParams::unit();
    let raw = ProcessParams::new(1.0, Convention::CameronMartin)?;

    println!(
        "{:>6} {:>22} {:>22} {:>10}",
        "c", "P(J/2 > c)", "P(J > c)", "bound"
    );
    for c in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0] {
        let half = tail_prob(c, &paper, trunc)?;
        let full = tail_prob(c, &raw, trunc)?;
        println!(
            "{c:>6} {:>22.15e} {:>22.15e} {:>10.2e}",
            half.probability,
            full.probability,
            half.error_bound.max(full.error_bound)
        );
    }

    // cdf and tail share one series, so they add up to one
    let r = cdf_with(0.5, &paper, trunc)?;
    let t = tail_prob(0.5, &paper, trunc)?;
    println!("\ncdf(0.5) + tail(0.5) = {:.17}", r.value + t.probability);

    // the law only depends on c / T^2
    let long = ProcessParams::new(3.0, Convention::Paper)?;
    println!(
        "P(X_3 > 4.5) = {:.15e}, P(X_1 > 0.5) = {:.15e}",
        tail_prob(4.5, &long, trunc)?.probability,
        t.probability
    );
    Ok(())
}
