//! Argument parsing and command dispatch for the `magicexpm` binary.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::{
    bch_doc, decompose_doc, evolve_doc, sweep_csv, sweep_rows, to_json_17, CliError,
    HamiltonianSpec, MethodChoice, SweepScale, SweepSpec, DEFAULT_TOLERANCE,
};
use crate::verify::run_verify;

const EXIT_CODE_HELP: &str = "\
Exit codes:
  0   success
  1   verification failure
  2   unreadable or malformed input JSON
  3   invariant violation in an input document
  4   exact method forced on an out-of-class Hamiltonian
  5   composition outside the closed-form domain
  64  usage error

Environment:
  MAGICEXPM_TOL   reporting tolerance for ok-flags in JSON output
                  (default 1e-12; never changes the closed-form math)";

#[derive(Parser)]
#[command(
    name = "magicexpm",
    version,
    about = "Closed-form evolution operators and BCH composition for four-level systems",
    after_help = EXIT_CODE_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Input JSON file with couplings h12..h34 (and optionally a diagonal);
    /// "-" reads stdin.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the conjugated Hamiltonian over the Pauli tensor basis.
    Decompose {
        #[command(flatten)]
        input: InputArg,
    },
    /// Evaluate the evolution operator e^{-itH}.
    Evolve {
        #[command(flatten)]
        input: InputArg,
        /// Evolution time.
        #[arg(short = 't', long = "t", allow_hyphen_values = true)]
        t: f64,
        /// auto, exact-cross, exact-checkerboard, approx, symmetrized or oracle.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Compose two checkerboard-class generators in closed form.
    Bch {
        /// First input JSON file.
        #[arg(short = 'a', long = "a")]
        a: PathBuf,
        /// Second input JSON file.
        #[arg(short = 'b', long = "b")]
        b: PathBuf,
    },
    /// Error sweep over a time grid; CSV on stdout.
    Sweep {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "t-min", allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long = "t-max", allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long, default_value_t = 10)]
        points: u32,
        /// linear or log.
        #[arg(long, default_value = "linear")]
        scale: String,
        /// Comma-separated method list, evaluated in order.
        #[arg(long, default_value = "approx,symmetrized")]
        methods: String,
        /// Append #fit comment lines with log-log slopes.
        #[arg(long)]
        fit: bool,
    },
    /// Run the seeded self-verification suites.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
    }
}

fn load_spec(path: &PathBuf) -> Result<HamiltonianSpec, CliError> {
    HamiltonianSpec::from_json(&read_input(path)?)
}

fn reporting_tolerance() -> f64 {
    std::env::var("MAGICEXPM_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOLERANCE)
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    let tol = reporting_tolerance();
    match command {
        Command::Decompose { input } => {
            let spec = load_spec(&input.input)?;
            println!("{}", to_json_17(&decompose_doc(&spec, tol)?));
            Ok(0)
        }
        Command::Evolve { input, t, method } => {
            let spec = load_spec(&input.input)?;
            let choice = MethodChoice::parse(&method)?;
            println!("{}", to_json_17(&evolve_doc(&spec, t, choice, tol)?));
            Ok(0)
        }
        Command::Bch { a, b } => {
            let a_spec = load_spec(&a)?;
            let b_spec = load_spec(&b)?;
            println!("{}", to_json_17(&bch_doc(&a_spec, &b_spec, tol)?));
            Ok(0)
        }
        Command::Sweep {
            input,
            t_min,
            t_max,
            points,
            scale,
            methods,
            fit,
        } => {
            let spec = load_spec(&input.input)?;
            let sweep = SweepSpec {
                t_min,
                t_max,
                points,
                scale: SweepScale::parse(&scale)?,
            };
            let methods = methods
                .split(',')
                .map(|m| MethodChoice::parse(m.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = sweep_rows(&spec, &sweep, &methods)?;
            print!("{}", sweep_csv(&rows, fit));
            Ok(0)
        }
        Command::Verify { seed, trials } => {
            if trials == 0 {
                return Err(CliError::Usage("trials must be at least 1".into()));
            }
            let report = run_verify(seed, trials);
            print!("{}", report.text);
            if report.passed {
                Ok(0)
            } else {
                if let Some(counterexample) = &report.counterexample {
                    println!("{}", to_json_17(counterexample));
                }
                Ok(1)
            }
        }
    }
}

/// Parse arguments, run the command, return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            // Clap renders help and usage errors itself.
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("magicexpm: {err}");
            err.exit_code()
        }
    }
}
