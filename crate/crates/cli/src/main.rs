use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use twistkh::pd::FieldSpec;
use twistkh::report::Report;
use twistkh::run::{self, Mode, Options, WeightSource};
use twistkh::verify::{self, Suite, VerifyOptions};
use twistkh::InputError;

/// Reduced and twisted Khovanov homology in characteristic 2.
#[derive(Parser)]
#[command(name = "twistkh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// coefficient field: gf2, gf2k:<k> or ratfn(<vars>)
    #[arg(long, global = true)]
    field: Option<String>,
    /// generic, roberts, zero, explicit, or a file of `mark` lines
    #[arg(long, global = true)]
    weights: Option<String>,
    /// basepoint edge label
    #[arg(long, global = true)]
    basepoint: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// also write the report as JSON to this path
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true, hide = true)]
    inject_d2_fault: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the (un)twisted complex, by delta grading
    Compute {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CliMode::Twisted)]
        mode: CliMode,
    },
    /// Connected resolutions and their delta gradings
    SpanningTrees { input: PathBuf },
    /// E2 generators, the d2 differential and the E3 page
    Spectral { input: PathBuf },
    /// Run verification suites on a diagram
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CliSuite::All)]
        suite: CliSuite,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Untwisted,
    Twisted,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliSuite {
    Invariance,
    Theorem,
    Spectral,
    Roberts,
    All,
}

enum Failure {
    Input(InputError),
    Other(anyhow::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn read(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let field = cli.field.as_deref().map(FieldSpec::parse).transpose().map_err(|m| InputError::Usage(format!("--field: {m}")))?;
    let opts = Options { field, basepoint: cli.basepoint, weights: cli.weights.as_deref().map(WeightSource::parse) };
    let report = match &cli.command {
        Command::Compute { input, mode } => {
            let d = run::load(&read(input)?, &opts)?;
            let mode = match mode {
                CliMode::Untwisted => Mode::Untwisted,
                CliMode::Twisted => Mode::Twisted,
            };
            run::compute(&d, mode)?
        }
        Command::SpanningTrees { input } => run::spanning_trees(&run::load(&read(input)?, &opts)?)?,
        Command::Spectral { input } => run::spectral(&run::load(&read(input)?, &opts)?, cli.inject_d2_fault)?,
        Command::Verify { input, suite, trials } => {
            let d = run::load(&read(input)?, &opts)?;
            let suite = match suite {
                CliSuite::Invariance => Suite::Invariance,
                CliSuite::Theorem => Suite::Theorem,
                CliSuite::Spectral => Suite::Spectral,
                CliSuite::Roberts => Suite::Roberts,
                CliSuite::All => Suite::All,
            };
            let v = VerifyOptions { suite, trials: *trials, seed: cli.seed, inject_d2_fault: cli.inject_d2_fault };
            verify::verify(&d, &v)?
        }
    };
    if let Some(path) = &cli.json {
        std::fs::write(path, report.to_json_string()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = execute(&cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(report) => {
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, InputError::Internal(_)) { 1 } else { 2 })
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
