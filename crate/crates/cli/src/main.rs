use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bogoliubov_cli::commands::sweep::{Base, Param, SweepSpec};
use bogoliubov_cli::commands::{analyze, bcs, evolve, oracle, sweep, Format, Settings};
use bogoliubov_cli::error::exit;
use bogoliubov_cli::grid::Grid;
use bogoliubov_cli::CliError;
use bogoliubov_core::{BcsParams, Tolerances};
use clap::{Parser, Subcommand, ValueEnum};

const LEGEND: &str = "\
Classification codes:
  0  PositiveDefinite    H > 0, real frequencies, bounded evolution
  1  StableNonPositive   real frequencies, H indefinite or singular
  2  UnstableComplex     complex frequencies, exponential growth
  3  NonDiagonalizable   Jordan blocks, polynomial growth

Exit codes:
  0 success, 1 I/O or numerical failure, 2 usage, 3 parse error,
  4 structure violation, 5 propagator overflow, 6 bad range,
  7 wrong regime for the Fock comparison";

#[derive(Parser)]
#[command(name = "bogoliubov", version, about = "Diagonalize and classify quadratic bosonic forms", after_help = LEGEND)]
struct Cli {
    /// Relative tolerance for eigenvalue decisions.
    #[arg(long, global = true)]
    tol_eig: Option<f64>,
    /// Relative tolerance for hermiticity of A and symmetry of B.
    #[arg(long, global = true)]
    tol_struct: Option<f64>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Doc,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a form file and report its normal modes (default: doc).
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Include extraction rows and invariant kernels.
        #[arg(long)]
        emit_modes: bool,
    },
    /// Classify the pairing model over a grid of one or two parameters (default: csv).
    Sweep {
        /// delta, kappa or gamma.
        #[arg(long)]
        param: String,
        /// min:max:steps, endpoints included.
        #[arg(long)]
        range: String,
        #[arg(long, requires = "range2")]
        param2: Option<String>,
        #[arg(long, requires = "param2")]
        range2: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.3)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa: f64,
    },
    /// Propagator trace over a time grid (default: csv).
    Evolve {
        #[arg(long)]
        input: PathBuf,
        /// A time or min:max:steps.
        #[arg(long = "t")]
        times: String,
        /// Imaginary part added to every time.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        complex_time: f64,
    },
    /// Pairing-model frequencies and spectra (default: csv).
    Bcs {
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.3)]
        gamma: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        kappa: f64,
        /// Sweep delta over min:max:steps.
        #[arg(long)]
        sweep: Option<String>,
        /// Also write the form at --delta as a form file.
        #[arg(long)]
        emit_form: Option<PathBuf>,
    },
    /// Compare with a truncated occupation-number diagonalization (default: csv).
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = 6)]
        levels: usize,
    },
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut tol = Tolerances::default();
    for (name, value, slot) in [
        ("--tol-eig", cli.tol_eig, &mut tol.eig),
        ("--tol-struct", cli.tol_struct, &mut tol.structure),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
            *slot = v;
        }
    }
    Ok(Settings {
        tol,
        jobs: cli.jobs,
        format: cli.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Doc => Format::Doc,
        }),
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let s = settings(cli)?;
    match &cli.command {
        Command::Analyze { input, emit_modes } => analyze::run(input, *emit_modes, &s),
        Command::Sweep {
            param,
            range,
            param2,
            range2,
            epsilon,
            gamma,
            delta,
            kappa,
        } => {
            let mut axes = vec![(Param::parse(param)?, Grid::parse(range)?)];
            if let (Some(p), Some(r)) = (param2, range2) {
                axes.push((Param::parse(p)?, Grid::parse(r)?));
            }
            let spec = SweepSpec {
                base: Base {
                    epsilon: *epsilon,
                    gamma: *gamma,
                    delta: *delta,
                    kappa: *kappa,
                },
                axes,
            };
            sweep::run(&spec, &s)
        }
        Command::Evolve {
            input,
            times,
            complex_time,
        } => evolve::run(input, times, *complex_time, &s),
        Command::Bcs {
            epsilon,
            gamma,
            delta,
            kappa,
            sweep,
            emit_form,
        } => {
            let base = BcsParams::new(*epsilon, *gamma, *delta, *kappa)?;
            let grid = sweep.as_deref().map(Grid::parse).transpose()?;
            bcs::run(base, grid.as_ref(), emit_form.as_deref(), &s)
        }
        Command::Oracle {
            input,
            nmax,
            levels,
        } => oracle::run(input, *nmax, *levels, &s),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
