//! How the density remainder bound compares with the actual truncation
//! error, how many terms a tolerance needs, and the N-only uniform bound.
//!
//! ```text
//! cargo run --example truncation_bounds
//! ```

use wiener_l2::series::partial_density;
use wiener_l2::{argmax_h, choose_truncation, remainder_bound, uniform_remainder_bound};

fn main() -> wiener_l2::Result<()> {
    println!("{:>6} {:>3} {:>12} {:>12}", "x", "N", "|error|", "bound");
    for x in [0.1, 1.0, 10.0] {
        let exact = partial_density(x, 200)?;
        for n in [1, 2, 4, 8] {
            let err = (partial_density(x, n)? - exact).abs();
            println!(
                "{x:>6} {n:>3} {err:>12.3e} {:>12.3e}",
                remainder_bound(n, x)?
            );
        }
    }

    println!("\nterms needed for eps:");
    for eps in [1e-4, 1e-8, 1e-12] {
        let row: Vec<String> = [0.05, 0.5, 5.0, 50.0]
            .iter()
            .map(|&x| format!("x={x}: {}", choose_truncation(x, eps, 1_000_000).unwrap()))
            .collect();
        println!("  eps={eps:e}  {}", row.join("  "));
    }

    println!("\nuniform bound vs the peak of the x-dependent bound:");
    for n in [1, 5, 25, 125] {
        let peak = remainder_bound(n, argmax_h(n))?;
        println!(
            "  N={n:>3}  peak {peak:.3e}  uniform {:.3e}",
            uniform_remainder_bound(n)?
        );
    }
    Ok(())
}
