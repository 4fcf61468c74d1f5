//! Which variable does the series describe? Simulate `J_1` for a Brownian
//! motion with `E w(t)^2 = t` and fit the tail fractions against the series
//! read as the law of `J_1` and as the law of `J_1 / 2`.
//!
//! ```text
//! cargo run --release --example convention_resolution
//! ```

use wiener_l2::oracles::{resolve_convention, McConfig};

fn main() -> wiener_l2::Result<()> {
    let cfg = McConfig {
        paths: 100_000,
        steps: 512,
        seed: 3,
    };
    let fit = resolve_convention(&[0.25, 0.5, 1.0, 2.0], 1.0, &cfg)?;
    println!("chi^2 with series as law of J   : {:.1}", fit.as_raw_chi2);
    println!("chi^2 with series as law of J/2 : {:.1}", fit.as_half_chi2);
    println!(
        "convention that describes J     : {:?}",
        fit.raw_functional_convention()
    );
    Ok(())
}
