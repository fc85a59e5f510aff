use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use threeballs_cli::commands::{run, Command, OutputOptions};
use threeballs_cli::config::RunConfig;
use threeballs_cli::ExitStatus;
use threeballs_core::QuadOrders;

#[derive(Parser, Debug)]
#[command(
    name = "threeballs",
    version,
    about = "Numerical checks of three-balls inequalities for Dirac eigenfunctions"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// JSON run configuration; the built-in desk configuration if omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Existing directory for CSV/JSON outputs.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run jobs sequentially.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Base quadrature orders: `R,S` (radial, sphere) or `R,P,T` (radial, polar, transverse).
    #[arg(long, global = true, value_parser = parse_orders)]
    orders: Option<QuadOrders>,
    /// Write JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Write CSV reports.
    #[arg(long, global = true)]
    csv: bool,
    /// Print every report row.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Residuals of the eigen equation and the Laplacian identity.
    VerifyEigen,
    /// Frequency profiles and monotonicity.
    FrequencyScan,
    /// Three-balls inequalities.
    ThreeBalls,
    /// Every check.
    Suite,
    /// Print the effective configuration as JSON.
    Config,
}

fn parse_orders(s: &str) -> Result<QuadOrders, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [r, s] => Ok(QuadOrders {
            radial: r,
            polar: s,
            transverse: s.div_ceil(2).max(1),
        }),
        [r, p, t] => Ok(QuadOrders {
            radial: r,
            polar: p,
            transverse: t,
        }),
        _ => Err("expected R,S or R,P,T".into()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitStatus::Config.code()
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let g = cli.global;
    let mut cfg = match &g.config {
        Some(path) => match RunConfig::load(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.status().code() as u8);
            }
        },
        None => RunConfig::desk(),
    };
    if g.deterministic {
        cfg.deterministic = true;
    }
    if let Some(seed) = g.seed {
        cfg.seed = seed;
    }
    if let Some(orders) = g.orders {
        cfg.orders = orders;
    }
    if let Sub::Config = cli.command {
        return match serde_json::to_string_pretty(&cfg) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(ExitStatus::Config.code() as u8)
            }
        };
    }
    let command = match cli.command {
        Sub::VerifyEigen => Command::VerifyEigen,
        Sub::FrequencyScan => Command::FrequencyScan,
        Sub::ThreeBalls => Command::ThreeBalls,
        Sub::Suite => Command::Suite,
        Sub::Config => unreachable!("handled above"),
    };
    let opts = OutputOptions {
        out: g.out,
        json: g.json,
        csv: g.csv,
        verbose: g.verbose,
    };
    ExitCode::from(run(command, &cfg, &opts).code() as u8)
}
