//! Integrating `exp(-lambda x) g(x)` recovers the generating function
//! `cosh(sqrt(lambda))^{-1/2}`, including at complex arguments for the
//! generating function itself.
//!
//! ```text
//! cargo run --release --example laplace_round_trip
//! ```

use num_complex::Complex64;
use wiener_l2::oracles::{generating_function, laplace_transform_of_density};

fn main() -> wiener_l2::Result<()> {
    for lambda in [0.5, 1.0, 2.0, 5.0, 20.0] {
        let numeric = laplace_transform_of_density(lambda)?;
        let exact = generating_function(Complex64::new(lambda, 0.0), 1.0)?.re;
        println!(
            "lambda={lambda:>4}  integral {numeric:.15}  closed form {exact:.15}  diff {:.1e}",
            (numeric - exact).abs()
        );
    }

    // characteristic function E exp(i s X) = Q(-i s)
    for s in [1.0, 5.0, 25.0] {
        let phi = generating_function(Complex64::new(0.0, -s), 1.0)?;
        println!("E exp(i {s} X) = {:.12} {:+.12}i", phi.re, phi.im);
    }
    Ok(())
}
