use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deltabound::{Mass, SolverOptions};
use deltabound_cli::audit::{has_failures, run_audit};
use deltabound_cli::figures::{Figure, FIGURE_NAMES};
use deltabound_cli::output::{write_table, TableRow};
use deltabound_cli::run::{run_solve, run_sweep};
use deltabound_cli::{parse_config, CliError, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "deltabound",
    version,
    about = "Bound states of the 1D Dirac equation with delta centers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or json.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Levels of one configuration by every requested method.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Levels over the sweep in the config, or over a built-in figure grid.
    Sweep {
        #[arg(long, required_unless_present = "figure")]
        config: Option<PathBuf>,
        #[arg(long, value_parser = FIGURE_NAMES)]
        figure: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Merging, separation and symmetry limits of a preset.
    Audit {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &PathBuf) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn emit<R: TableRow>(rows: &[R], common: &Common, cfg: Option<&RunConfig>) -> Result<(), CliError> {
    let format = match &common.format {
        Some(f) => Format::from_label(f).unwrap_or_default(),
        None => cfg.and_then(|c| c.format).unwrap_or_default(),
    };
    let path = common
        .output
        .clone()
        .or_else(|| cfg.and_then(|c| c.output.clone()).map(PathBuf::from));
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(&p)?);
            write_table(rows, format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_table(rows, format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve { config, common } => {
            let cfg = load(&config)?;
            emit(&run_solve(&cfg)?, &common, Some(&cfg))?;
        }
        Command::Sweep { config, figure, common } => {
            let cfg = config.as_ref().map(load).transpose()?;
            let rows = match figure {
                Some(name) => {
                    let fig = Figure::from_name(&name).expect("clap restricts figure names");
                    let solver = cfg.as_ref().map_or_else(SolverOptions::default, |c| c.solver.clone());
                    let mass = cfg.as_ref().map_or(Mass::UNIT, |c| c.problem.mass());
                    fig.rows(&solver, mass)?
                }
                None => {
                    let cfg = cfg.as_ref().expect("clap requires a config without a figure");
                    let sweep = cfg
                        .sweep
                        .ok_or_else(|| CliError::config("sweep", "no sweep in config and no --figure given"))?;
                    run_sweep(cfg, &sweep)?
                }
            };
            emit(&rows, &common, cfg.as_ref())?;
        }
        Command::Audit { config, common } => {
            let cfg = load(&config)?;
            let rows = run_audit(&cfg)?;
            emit(&rows, &common, Some(&cfg))?;
            if has_failures(&rows) {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
