//! `airy-shift`: evaluate, verify and tabulate shifted Airy products and the
//! static-field Green's function.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or configuration
//! error, 3 quadrature failure, 4 I/O error.

mod error;
mod eval;
mod output;
mod run_config;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use airy_shift::{Rotation, Route, ShiftedProducts};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use error::CliError;
use eval::{Function, Point};
use output::Format;
use run_config::RunConfig;
use table::ZGrid;
use verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "airy-shift", version, about)]
struct Cli {
    /// Plain-text `key = value` settings file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Quadrature tolerance for contour integrals (overrides `quad_tol`).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the pseudo-random sample grids.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval {
        /// u+, u-, w+, w-, product, product(R1,R2), diff+, diff-, aiai-real,
        /// w-real+, w-real-
        #[arg(value_parser = |s: &str| s.parse::<Function>())]
        function: Function,
        #[arg(long, allow_hyphen_values = true, value_parser = eval::parse_complex)]
        z: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true, value_parser = eval::parse_complex)]
        z0: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        /// Rotation of the shifted factor for `product`: 0, + or -.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rotation)]
        r1: Option<Rotation>,
        /// Rotation of the unshifted factor for `product`: 0, + or -.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rotation)]
        r2: Option<Rotation>,
        #[arg(long, default_value = "contour", value_parser = eval::parse_route)]
        route: Route,
    },
    /// Run a verification suite and report each checked residual.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Tabulate over a grid and write the table to a file.
    Table {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rotation, default_value = "0")]
        r1: Rotation,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rotation, default_value = "0")]
        r2: Rotation,
        #[arg(long, allow_hyphen_values = true, value_parser = eval::parse_complex, default_value = "0")]
        z0: Complex64,
        /// Real z from LO to HI; without it z is sampled from the disk
        /// |z| <= z_max.
        #[arg(long, allow_hyphen_values = true, value_parser = table::parse_range)]
        x_range: Option<(f64, f64)>,
        #[arg(long, default_value = "contour", value_parser = eval::parse_route)]
        route: Route,
        /// Fixed xi for the Green's function table (overrides `greens_xi`).
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Product,
    Greens,
}

fn parse_rotation(s: &str) -> Result<Rotation, String> {
    eval::rotation(s).ok_or_else(|| format!("rotation {s:?} is not one of 0, +, -"))
}

fn settings(cli: &Cli, count: Option<usize>) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.tol {
        cfg.contour.quad_tol = t;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if count.is_some() {
        cfg.count = count;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval {
            function,
            z,
            z0,
            x,
            x0,
            r1,
            r2,
            route,
        } => {
            let cfg = settings(cli, None)?;
            let mut f = *function;
            if let Function::Product(a, b) = &mut f {
                *a = r1.unwrap_or(*a);
                *b = r2.unwrap_or(*b);
            } else if r1.is_some() || r2.is_some() {
                return Err(CliError::Config("--r1/--r2 apply to product only".into()));
            }
            let at = if f.is_real_axis() {
                let (Some(x), Some(x0)) = (x, x0) else {
                    return Err(CliError::Config(
                        "real-axis functions need --x and --x0".into(),
                    ));
                };
                Point {
                    z: Complex64::new(*x, 0.0),
                    z0: Complex64::new(*x0, 0.0),
                }
            } else {
                let Some(z) = z else {
                    return Err(CliError::Config("--z is required".into()));
                };
                Point {
                    z: *z,
                    z0: z0.unwrap_or_default(),
                }
            };
            let p = ShiftedProducts::new(cfg.contour.clone());
            let t = eval::run(&p, f, at, *route)?;
            print(&t.render(cfg.format))
        }
        Command::Verify { suite, count } => {
            let cfg = settings(cli, *count)?;
            let r = verify::run(*suite, &cfg);
            print(&r.table.render(cfg.format))?;
            eprintln!(
                "{}: {} checks, {} failed, max residual {:.3e}, tolerance {:.1e}: {}",
                suite.name(),
                r.cases,
                r.failed,
                r.worst,
                r.tolerance,
                if r.failed == 0 { "PASS" } else { "FAIL" }
            );
            if r.failed == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(r.failed))
            }
        }
        Command::Table {
            target,
            output,
            count,
            r1,
            r2,
            z0,
            x_range,
            route,
            xi,
        } => {
            let cfg = settings(cli, *count)?;
            let t = match target {
                Target::Product => {
                    let grid = match x_range {
                        Some((lo, hi)) => ZGrid::Line { lo: *lo, hi: *hi },
                        None => ZGrid::Disk,
                    };
                    table::products(&cfg, *r1, *r2, *z0, grid, *route)?
                }
                Target::Greens => table::greens(&cfg, xi.unwrap_or(cfg.greens_xi))?,
            };
            std::fs::write(output, t.render(cfg.format))
                .map_err(|e| CliError::Io(format!("{}: {e}", output.display())))?;
            eprintln!("wrote {} rows to {}", t.len(), output.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
