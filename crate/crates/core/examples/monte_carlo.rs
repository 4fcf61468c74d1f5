//! Simulated Wiener paths against the series: moments of the raw
//! functional, tail fractions, and a step-doubling check of the time
//! discretization.
//!
//! ```text
//! cargo run --release --example monte_carlo [paths]
//! ```

use wiener_l2::oracles::{
    mc_moments, mc_sample_functional, mc_tail_estimates, mc_tail_richardson, McConfig,
};
use wiener_l2::{tail_prob, Convention, ProcessParams, TruncationControl};

fn main() -> wiener_l2::Result<()> {
    let paths = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(200_000);
    let cfg = McConfig {
        paths,
        steps: 512,
        seed: 11,
    };

    let raw = ProcessParams::new(1.0, Convention::CameronMartin)?;
    let m = mc_moments(&mc_sample_functional(&raw, &cfg)?)?;
    println!(
        "J_1 mean     {:.5} +- {:.1e}  (exact 1/2)",
        m.mean.mean, m.mean.std_error
    );
    println!(
        "J_1 variance {:.5} +- {:.1e}  (exact 1/3)",
        m.variance.mean, m.variance.std_error
    );

    let p = ProcessParams::unit();
    let cs = [0.1, 0.25, 0.5, 1.0, 2.0];
    let est = mc_tail_estimates(&cs, &p, &cfg)?;
    println!(
        "\n{:>5} {:>10} {:>10} {:>6}",
        "c", "simulated", "series", "z"
    );
    for (c, e) in cs.iter().zip(&est) {
        let model = tail_prob(*c, &p, TruncationControl::tolerance(1e-10))?.probability;
        println!(
            "{c:>5} {:>10.5} {model:>10.5} {:>6.2}",
            e.mean,
            e.z_score(model)
        );
    }

    let r = mc_tail_richardson(0.5, &p, &cfg)?;
    println!(
        "\nP(X > 0.5): {} steps {:.5}, {} steps {:.5}, stable within 3 sigma: {}",
        cfg.steps,
        r.coarse.mean,
        2 * cfg.steps,
        r.fine.mean,
        r.is_stable(3.0)
    );
    Ok(())
}
