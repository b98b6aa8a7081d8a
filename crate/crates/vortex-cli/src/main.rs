//! Command-line front end: ingest vortex specs and obstacle regions, run
//! the laboratory operations, and emit CSV/JSON suitable for external
//! plotting. All runs are deterministic for a fixed configuration.
//!
//! Exit codes: 0 success, 1 input errors, 2 property-violation or
//! construction-bug errors. Failures print `{"error": kind, "detail": ...}`
//! on stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;
use vortex_core::{Angle, State, VortexError, VortexSpec};

mod commands;

#[derive(Parser)]
#[command(name = "vortex", version, about = "A laboratory for cylindrical vortices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate a vortex and write the orbit as CSV (n, x, z_re, z_im).
    Orbit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        /// Starting base point (decimal in [0, 1)).
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        #[arg(long, default_value_t = 0.0)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sup of |rho_n|/n over a grid along a doubling time sequence.
    Drift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1 << 12)]
        n_max: u64,
        #[arg(long, default_value_t = 1 << 12)]
        grid: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cesàro sections and their defects for k = 1, 2, 4, ... up to n-max.
    ReduceCesaro {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        n_max: u64,
        #[arg(long, default_value_t = 1 << 12)]
        grid: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve the cohomological equation frequency by frequency.
    ReduceFourier {
        #[arg(long)]
        input: PathBuf,
        /// Truncation; defaults to the support of rho.
        #[arg(long)]
        n_max: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan small divisors of a pair of angles.
    Diophantine {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        n_max: i64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// How many smallest divisors to keep in the report.
        #[arg(long, default_value_t = 16)]
        keep: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invariant set at infinity for one affine isometry.
    Bpm {
        /// Isometry JSON {"linear": [[...]], "translation": [...]}.
        #[arg(long)]
        input: PathBuf,
        /// Obstacle region JSON {"disks": [...], "boxes": [...]}.
        #[arg(long)]
        region: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invariant set for a vortex over a finite cyclic base.
    BpmPeriodic {
        /// Finite-base vortex JSON {"isometries": [...]}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        region: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// FS(2,3) frequency data: one modulus, or family coverage of a grid.
    Fs {
        /// Inspect a single modulus.
        #[arg(long)]
        q: Option<u64>,
        /// Family scan limit for grid coverage.
        #[arg(long, default_value_t = 32)]
        m_max: u64,
        #[arg(long, default_value_t = 10)]
        grid: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the staged construction and emit the stage log.
    AkBuild {
        #[arg(long, default_value_t = 1)]
        m1: u64,
        #[arg(long, default_value_t = 1.0)]
        ell1: f64,
        #[arg(long, default_value_t = 2)]
        stages: u32,
        #[arg(long, default_value_t = 64)]
        m_max: u64,
        /// Also run the independence dichotomy up to this bound.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Density certificates for the stage graphs and orbits.
    AkDensity {
        #[arg(long, default_value_t = 1)]
        m1: u64,
        #[arg(long, default_value_t = 1.0)]
        ell1: f64,
        #[arg(long, default_value_t = 2)]
        stages: u32,
        #[arg(long, default_value_t = 64)]
        m_max: u64,
        /// Cylinder grid for the empirical checks.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// First-return induction of a finite-base vortex on a subset.
    Induce {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated base points, e.g. "0,2".
        #[arg(long)]
        subset: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan for the first exit from a fiber ball in both time directions.
    Escape {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
        #[arg(long, default_value_t = 0.0)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, VortexError> {
    let text = fs::read_to_string(path)
        .map_err(|e| VortexError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| VortexError::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), VortexError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| VortexError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| VortexError::Input(format!("cannot write stdout: {e}")))
        }
    }
}

fn to_pretty_json<T: serde::Serialize>(value: &T) -> Result<String, VortexError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| VortexError::Input(format!("serialization failed: {e}")))
}

/// Angle pair pulled from any JSON carrying "alpha" and "beta" keys
/// (a full vortex spec qualifies).
#[derive(Deserialize)]
struct AnglePair {
    alpha: Angle,
    beta: Angle,
}

fn run(cli: Cli) -> Result<(), VortexError> {
    match cli.command {
        Command::Orbit {
            input,
            n_max,
            x0,
            z_re,
            z_im,
            output,
        } => {
            let v: VortexSpec = read_json(&input)?;
            let start = State::new(Angle::from_f64(x0), Complex64::new(z_re, z_im));
            let csv = commands::orbit_csv(&v, &start, n_max);
            write_output(&output, &csv)
        }
        Command::Drift {
            input,
            n_max,
            grid,
            output,
        } => {
            let v: VortexSpec = read_json(&input)?;
            let report = vortex_core::drift_estimate(&v, n_max, grid)?;
            write_output(&output, &to_pretty_json(&report)?)
        }
        Command::ReduceCesaro {
            input,
            n_max,
            grid,
            output,
        } => {
            let v: VortexSpec = read_json(&input)?;
            let reports = commands::cesaro_sweep(&v, n_max, grid)?;
            write_output(&output, &to_pretty_json(&reports)?)
        }
        Command::ReduceFourier {
            input,
            n_max,
            output,
        } => {
            let v: VortexSpec = read_json(&input)?;
            if v.fiber.flip {
                return Err(VortexError::Unsupported(
                    "the Fourier solver needs a rotation fiber map".into(),
                ));
            }
            let out = vortex_reduce::fourier_solve(&v.rho, &v.alpha, &v.fiber.angle, n_max)?;
            write_output(&output, &to_pretty_json(&out)?)
        }
        Command::Diophantine {
            input,
            n_max,
            tau,
            keep,
            output,
        } => {
            let pair: AnglePair = read_json(&input)?;
            let report = vortex_reduce::diophantine_scan(&pair.alpha, &pair.beta, n_max, tau, keep)?;
            write_output(&output, &to_pretty_json(&report)?)
        }
        Command::Bpm {
            input,
            region,
            samples,
            output,
        } => {
            let iso: vortex_core::EuclideanIsometry = read_json(&input)?;
            let u: vortex_bpm::BoundedRegion = read_json(&region)?;
            let cert = commands::bpm_single(&iso, &u, samples)?;
            write_output(&output, &to_pretty_json(&cert)?)
        }
        Command::BpmPeriodic {
            input,
            region,
            samples,
            output,
        } => {
            let v: vortex_core::FiniteBaseVortex = read_json(&input)?;
            let u: vortex_bpm::BoundedRegion = read_json(&region)?;
            let cert = commands::bpm_cyclic(&v, &u, samples)?;
            write_output(&output, &to_pretty_json(&cert)?)
        }
        Command::Fs {
            q,
            m_max,
            grid,
            output,
        } => {
            let value = commands::fs_report(q, m_max, grid)?;
            write_output(&output, &to_pretty_json(&value)?)
        }
        Command::AkBuild {
            m1,
            ell1,
            stages,
            m_max,
            bound,
            output,
        } => {
            let value = commands::ak_build(m1, ell1, stages, m_max, bound)?;
            write_output(&output, &to_pretty_json(&value)?)
        }
        Command::AkDensity {
            m1,
            ell1,
            stages,
            m_max,
            grid,
            output,
        } => {
            let value = commands::ak_density(m1, ell1, stages, m_max, grid)?;
            write_output(&output, &to_pretty_json(&value)?)
        }
        Command::Induce {
            input,
            subset,
            output,
        } => {
            let v: vortex_core::FiniteBaseVortex = read_json(&input)?;
            let y: Vec<usize> = subset
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|e| VortexError::Input(format!("bad subset entry '{s}': {e}")))
                })
                .collect::<Result<_, _>>()?;
            let induced = v.induced_first_return(&y)?;
            write_output(&output, &to_pretty_json(&induced)?)
        }
        Command::Escape {
            input,
            n_max,
            radius,
            x0,
            z_re,
            z_im,
            output,
        } => {
            let v: VortexSpec = read_json(&input)?;
            let start = State::new(Angle::from_f64(x0), Complex64::new(z_re, z_im));
            let report = v.escape_scan(&start, n_max, radius)?;
            write_output(&output, &to_pretty_json(&report)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let diag = json!({ "error": e.kind(), "detail": e.to_string() });
            eprintln!("{diag}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
