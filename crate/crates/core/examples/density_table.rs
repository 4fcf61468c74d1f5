//! Density of `X = J_T / 2` on a few points for two horizons, each value
//! with its truncation bound and the number of series terms it needed.
//!
//! ```text
//! cargo run --example density_table
//! ```

use wiener_l2::{density_f, Convention, ProcessParams, TruncationControl};

fn main() -> wiener_l2::Result<()> {
    let trunc = TruncationControl::tolerance(1e-12);
    for horizon in [1.0, 2.0] {
        let p = ProcessParams::new(horizon, Convention::Paper)?;
        println!("T = {horizon}");
        println!("{:>10} {:>24} {:>12} {:>6}", "x", "f(x)", "bound", "terms");
        for x in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0] {
            let f = density_f(x, &p, trunc)?;
            println!(
                "{x:>10} {:>24.16e} {:>12.3e} {:>6}",
                f.value, f.error_bound, f.terms_used
            );
        }
        println!();
    }

    // a fixed number of terms reports what that truncation guarantees
    let p = ProcessParams::unit();
    for n in 1..=4 {
        let f = density_f(3.0, &p, TruncationControl::terms(n))?;
        println!(
            "f(3) with {n} term(s): {:.16e} +- {:.3e}",
            f.value, f.error_bound
        );
    }
    Ok(())
}
