//! The two numerical building blocks: the in-crate erfc, and compensated
//! summation of the alternating coefficient series.
//!
//! ```text
//! cargo run --example erfc_and_summation
//! ```

use wiener_l2::erfc;
use wiener_l2::series::CentralCoefficients;
use wiener_l2::summation::{compensated_sum, CompensatedSum};

fn main() {
    for x in [-1.0, 0.0, 0.5, 1.0, 3.0, 10.0, 26.0] {
        println!("erfc({x:>5}) = {:.17e}", erfc(x));
    }

    // sum (-1)^l c_l converges to 1/sqrt(2), but only like N^{-1/2}
    for n in [10usize, 1_000, 100_000] {
        let signed = CentralCoefficients::new().take(n).enumerate();
        let s = compensated_sum(signed.map(|(l, c)| if l % 2 == 0 { c } else { -c }));
        println!(
            "N = {n:>6}: sum = {s:.12}, gap to 1/sqrt(2) = {:.3e}",
            s - std::f64::consts::FRAC_1_SQRT_2
        );
    }

    let values = [1e16, 1.0, -1e16];
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    let naive: f64 = values.iter().sum();
    println!(
        "1e16 + 1 - 1e16: naive {naive}, compensated {}",
        acc.value()
    );
}
