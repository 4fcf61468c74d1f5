//! The command-line tables without the binary: layer a TOML config under
//! explicit overrides, build a table and render it as CSV.
//!
//! ```text
//! cargo run --example run_config
//! ```

use wiener_l2::cli::{cmd_table, render_records, ConfigOverrides, RunConfig};

fn main() -> wiener_l2::Result<()> {
    let file = ConfigOverrides::from_toml(
        r#"
        T = 2.0
        convention = "cameron-martin"
        grid = "0.5:8:4:log"
        eps = 1e-9
        "#,
    )?;
    let flags = ConfigOverrides {
        format: Some("csv".into()),
        ..Default::default()
    };
    let cfg = RunConfig::resolve(flags.over(file))?;
    print!("{}", render_records(&cmd_table(&cfg)?, &cfg));
    Ok(())
}
