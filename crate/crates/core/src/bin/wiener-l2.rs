use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wiener_l2::cli::OutputRecord;
use wiener_l2::cli::{
    cmd_cdf, cmd_density, cmd_table, cmd_tail, cmd_validate, render_records, render_report,
    ConfigOverrides, RunConfig,
};
use wiener_l2::Error;

type TableCommand = fn(&RunConfig) -> Result<Vec<OutputRecord>, Error>;

/// Density, CDF and tail tables with error bounds for the squared L2 norm of
/// a Wiener path.
#[derive(Parser)]
#[command(name = "wiener-l2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density f(x) on the grid
    Density(Opts),
    /// Distribution function P(X <= c) on the grid
    Cdf(Opts),
    /// Tail probability P(X > c) on the grid
    Tail(Opts),
    /// Density, CDF and tail at every grid point
    Table(Opts),
    /// Cross-check the series against quadrature, the Laplace transform and Monte Carlo
    Validate(Opts),
}

#[derive(Args)]
struct Opts {
    /// Time horizon
    #[arg(long = "T", value_name = "T")]
    horizon: Option<f64>,
    /// paper (X = J/2) or cameron-martin (X = J)
    #[arg(long)]
    convention: Option<String>,
    /// Absolute error target; picks the number of terms per point
    #[arg(long, conflicts_with = "terms")]
    eps: Option<f64>,
    /// Fixed number of series terms
    #[arg(long, value_name = "N")]
    terms: Option<usize>,
    /// MIN:MAX:COUNT[:log]
    #[arg(long)]
    grid: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo paths
    #[arg(long)]
    paths: Option<usize>,
    /// Monte Carlo time steps per path
    #[arg(long)]
    steps: Option<usize>,
    /// TOML file with any of the above (flags win)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Opts {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let flags = ConfigOverrides {
            horizon: self.horizon,
            convention: self.convention.clone(),
            eps: self.eps,
            terms: self.terms,
            grid: self.grid.clone(),
            format: self.format.clone(),
            seed: self.seed,
            paths: self.paths,
            steps: self.steps,
        };
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                ConfigOverrides::from_toml(&text)?
            }
            None => ConfigOverrides::default(),
        };
        RunConfig::resolve(flags.over(file))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    let result = match out {
        Some(path) => std::fs::write(path, text).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| ("stdout".to_string(), e)),
    };
    result.map_err(|(what, e)| Error::Config(format!("cannot write {what}: {e}")))
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (opts, command) = match &cli.command {
        Command::Density(o) => (o, cmd_density as TableCommand),
        Command::Cdf(o) => (o, cmd_cdf as TableCommand),
        Command::Tail(o) => (o, cmd_tail as TableCommand),
        Command::Table(o) => (o, cmd_table as TableCommand),
        Command::Validate(o) => {
            let cfg = o.resolve()?;
            let report = cmd_validate(&cfg)?;
            emit(&render_report(&report, &cfg), o.out.as_ref())?;
            if !report.passed {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    diagnostic(&format!(
                        "check {} failed: {:e} > {:e}",
                        c.name, c.metric, c.threshold
                    ));
                }
            }
            return Ok(report.passed);
        }
    };
    let cfg = opts.resolve()?;
    let records = command(&cfg)?;
    emit(&render_records(&records, &cfg), opts.out.as_ref())?;
    Ok(true)
}

fn diagnostic(msg: &str) {
    let stderr = std::io::stderr();
    let color = stderr.is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let label = if color {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    };
    let _ = writeln!(stderr.lock(), "{label}: {msg}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            diagnostic(&e.to_string());
            match e {
                Error::Config(_) | Error::Domain { .. } => ExitCode::from(2),
                Error::IterationLimit { .. } | Error::Accuracy(_) => ExitCode::from(1),
            }
        }
    }
}
