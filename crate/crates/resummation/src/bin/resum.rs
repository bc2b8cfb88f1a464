//! Thin command-line front end over the library: coefficient tables,
//! resummation sweeps, cutoff-iteration reports, figure datasets, and the
//! self-validation suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use resummation::check;
use resummation::cli::{
    cmd_coeffs, cmd_coeffs_asymptotics, cmd_figure, cmd_iterate, cmd_resum, write_output,
    OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(name = "resum", about = "Divergent-series resummation for the quartic anharmonic oscillator", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Reexpansion order N
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Oscillator frequency
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Lower end of the coupling grid
    #[arg(long, default_value_t = 0.01)]
    gmin: f64,
    /// Upper end of the coupling grid
    #[arg(long, default_value_t = 1000.0)]
    gmax: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 121)]
    points: usize,
    /// Logarithmic grid spacing
    #[arg(long)]
    log: bool,
    /// Fixed-point tolerance on the subtraction cutoff
    #[arg(long, default_value_t = 1e-10)]
    cutoff_tol: f64,
    /// Root-finder tolerance
    #[arg(long, default_value_t = 1e-12)]
    root_tol: f64,
    /// Quadrature relative tolerance
    #[arg(long, default_value_t = 1e-12)]
    quad_tol: f64,
    /// Number of discontinuity correction terms (0 = leading only)
    #[arg(long, default_value_t = 0)]
    corrections: usize,
    /// Oracle basis size floor
    #[arg(long, default_value_t = 16)]
    basis_size: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

impl CommonOpts {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            order: self.order,
            omega: self.omega,
            g_min: self.gmin,
            g_max: self.gmax,
            points: self.points,
            log_grid: self.log,
            root_tol: self.root_tol,
            fixed_point_tol: self.cutoff_tol,
            quad_tol: self.quad_tol,
            correction_truncation: self.corrections,
            format: self.format.into(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact and decimal weak-coupling coefficients E_0..E_N
    Coeffs {
        #[command(flatten)]
        common: CommonOpts,
        /// Also emit the large-order comparison table
        #[arg(long)]
        asymptotics: bool,
    },
    /// Self-consistent cutoff iteration report
    Iterate {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sweep W_N and the corrected Wbar'_N over a coupling grid
    Resum {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit one of the five curve datasets
    Figure {
        /// Figure id, 1..=5
        id: u8,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the self-validation suite and emit a JSON summary
    Check {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn emit(common: &CommonOpts, content: String) -> ExitCode {
    match &common.out {
        Some(path) => match write_output(path, &content) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: failed to write {}: {e}", path.display());
                ExitCode::from(2)
            }
        },
        None => {
            print!("{content}");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Coeffs { common, asymptotics } => {
            let ds = if *asymptotics {
                cmd_coeffs_asymptotics(common.order)
            } else {
                cmd_coeffs(common.order)
            };
            ds.map(|d| (common.clone(), d.render(common.format.into())))
        }
        Command::Iterate { common } => cmd_iterate(&common.run_config())
            .map(|(d, _)| (common.clone(), d.render(common.format.into()))),
        Command::Resum { common } => {
            cmd_resum(&common.run_config()).map(|d| (common.clone(), d.render(common.format.into())))
        }
        Command::Figure { id, common } => cmd_figure(*id, &common.run_config())
            .map(|d| (common.clone(), d.render(common.format.into()))),
        Command::Check { common } => match check::run_all() {
            Ok(results) => {
                for r in &results {
                    eprintln!(
                        "criterion {:2}: {} - {} ({})",
                        r.id,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    );
                }
                let all = results.iter().all(|r| r.passed);
                let code = emit(common, check::summary_json(&results));
                return if code == ExitCode::SUCCESS && !all {
                    ExitCode::from(1)
                } else {
                    code
                };
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok((common, content)) => emit(&common, content),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                resummation::ResumError::InvalidInput(_)
                | resummation::ResumError::InvalidOrder(_)
                | resummation::ResumError::CapacityExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
