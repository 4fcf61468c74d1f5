//! Run the full validation suite in-process and print the report.
//!
//! ```text
//! cargo run --release --example validation_report
//! ```

use wiener_l2::cli::{cmd_validate, ConfigOverrides, RunConfig};

fn main() -> wiener_l2::Result<()> {
    let cfg = RunConfig::resolve(ConfigOverrides {
        paths: Some(50_000),
        steps: Some(512),
        ..Default::default()
    })?;
    let report = cmd_validate(&cfg)?;
    for c in &report.checks {
        println!(
            "{:<30} {}  {:.3e} (limit {:.1e})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.metric,
            c.threshold
        );
    }
    println!("overall: {}", if report.passed { "pass" } else { "FAIL" });
    Ok(())
}
