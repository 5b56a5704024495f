use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use divbound::bounds::Tolerance;
use divbound::divergence::RenyiOrder;
use divbound::harness::commands::{self, Measure, DEFAULT_ORDERS};
use divbound::harness::figure::DEFAULT_RESOLUTION;
use divbound::harness::verify::VerifyConfig;
use divbound::harness::{exit, CliError};
use divbound::Unit;

/// Divergences and reverse Pinsker bounds on finite alphabets.
///
/// Exit codes: 0 ok, 1 property violation, 2 input error, 3 alphabet
/// mismatch, 4 theorem violation.
#[derive(Parser)]
#[command(name = "divbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one divergence between two distribution files.
    Div {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, value_enum)]
        measure: Measure,
        /// Rényi order: a number, or "inf".
        #[arg(long)]
        alpha: Option<RenyiOrder>,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
    },
    /// Evaluate every bound for a pair and check it against the exact values.
    Bounds {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Comma-separated Rényi orders.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<RenyiOrder>,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Run the randomized inequality suite.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5, 6, 7, 8])]
        sizes: Vec<usize>,
        #[arg(long, env = "DIVBOUND_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
        /// Halve the named bound (harness self-test).
        #[arg(long, hide = true)]
        corrupt_bound: Option<String>,
    },
    /// Write figure data as CSV.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
    },
    /// Brute-force the non-typicality exponent and compare with its bounds.
    Sanov {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[arg(long, default_value_t = 3)]
        passes: usize,
        #[arg(long, value_enum, default_value_t = Unit::Nats)]
        unit: Unit,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Div {
            p,
            q,
            measure,
            alpha,
            unit,
        } => commands::cmd_div(&p, &q, measure, alpha, unit, &mut out),
        Command::Bounds {
            p,
            q,
            alpha,
            unit,
            tolerance,
        } => {
            let orders = if alpha.is_empty() {
                DEFAULT_ORDERS
                    .iter()
                    .map(|&a| RenyiOrder::new(a).expect("valid order"))
                    .collect()
            } else {
                alpha
            };
            commands::cmd_bounds(
                &p,
                &q,
                &orders,
                unit,
                Tolerance::with_abs(tolerance),
                &mut out,
            )
        }
        Command::Verify {
            trials,
            sizes,
            seed,
            tolerance,
            unit,
            corrupt_bound,
        } => {
            let config = VerifyConfig {
                trials,
                alphabet_sizes: sizes,
                seed,
                tolerance_nats: tolerance,
                unit,
                corrupt: corrupt_bound,
            };
            commands::cmd_verify(&config, &mut out, &mut std::io::stderr())
        }
        Command::Figure {
            which,
            out: dir,
            resolution,
            unit,
        } => commands::cmd_figure(which, &dir, resolution, unit, &mut out),
        Command::Sanov {
            q,
            delta,
            grid,
            passes,
            unit,
        } => commands::cmd_sanov(&q, delta, grid, passes, unit, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "divbound: {e}");
            e.exit_code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(u8::try_from(code).unwrap_or(exit::INPUT as u8))
}
