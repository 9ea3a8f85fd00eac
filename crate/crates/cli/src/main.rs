use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fidbayes::harness::{
    density_csv, figure_curves, parse_curve_csv, render_svg, run_table, table_csv, DensityMethod, DensityParams, Grid,
};
use fidbayes::mixture::DEFAULT_KAPPA;
use fidbayes::sensitivity::{binary_posterior_bounds, PriorClass};
use fidbayes::Error;

#[derive(Parser, Debug)]
#[command(name = "fidbayes", version, about = "Interval-null post-data probabilities: tables, densities and plots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regenerate one of the five tables as CSV.
    Table {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a post-data density (or the likelihood) on a grid.
    Density {
        #[arg(long, value_parser = parse_method)]
        method: DensityMethod,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta0: f64,
        /// `inf` selects the flat weight (fiducial-Bayes only).
        #[arg(long)]
        sigma0: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        #[arg(long)]
        se: f64,
        #[arg(long, allow_hyphen_values = true)]
        xbar: f64,
        /// LO:HI:COUNT, endpoints included.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw density CSV files as one SVG chart; curves are named after the files.
    Svg {
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lower and upper posterior probability of a hypothesis over a class of priors.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        priors: Vec<f64>,
        #[arg(long)]
        bayes_factor: f64,
    },
    /// Render figure 1 or 2 (three densities and the likelihood) as SVG.
    Figure {
        #[arg(long)]
        id: u8,
        #[arg(long, value_parser = parse_grid, default_value = "-1:5:601", allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_method(s: &str) -> Result<DensityMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure category, mapped to the process exit code.
#[derive(Debug)]
enum Failure {
    Validation(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Validation(format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(|e| Failure::Validation(format!("stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Table { id, out } => emit(&table_csv(&run_table(id)?), out.as_deref()),
        Command::Density { method, epsilon, lambda, theta0, sigma0, kappa, se, xbar, grid, out } => {
            let params = DensityParams { eps: epsilon, lam: lambda, theta0, sigma0, kappa, se, xbar };
            emit(&density_csv(method, &params, &grid)?, out.as_deref())
        }
        Command::Svg { inputs, out } => {
            let mut curves = Vec::with_capacity(inputs.len());
            for path in &inputs {
                let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
                let name =
                    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
                curves.push(parse_curve_csv(&name, &text)?);
            }
            emit(&render_svg(&curves)?, Some(&out))
        }
        Command::Bounds { priors, bayes_factor } => {
            let (lo, hi) = binary_posterior_bounds(&PriorClass::binary(priors)?, bayes_factor)?;
            emit(&format!("lower,upper\n{lo},{hi}\n"), None)
        }
        Command::Figure { id, grid, out } => emit(&render_svg(&figure_curves(id, &grid)?)?, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
