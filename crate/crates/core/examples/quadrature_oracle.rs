//! The density from the real-axis integral representation, computed by
//! composite Gauss-Legendre quadrature, against the series.
//!
//! ```text
//! cargo run --release --example quadrature_oracle
//! ```

use wiener_l2::oracles::{quadrature_density, QuadratureConfig};
use wiener_l2::{density_g, TruncationControl};

fn main() -> wiener_l2::Result<()> {
    let cfg = QuadratureConfig::default();
    println!(
        "{:>8} {:>24} {:>24} {:>10}",
        "x", "series", "quadrature", "diff"
    );
    for x in [0.02, 0.05, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0] {
        let s = density_g(x, TruncationControl::tolerance(1e-13))?.value;
        let q = quadrature_density(x, &cfg)?;
        println!("{x:>8} {s:>24.16e} {q:>24.16e} {:>10.2e}", (s - q).abs());
    }
    Ok(())
}
