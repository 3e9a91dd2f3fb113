//! `wreathplane`: classify, decide and explore scenario files.
//!
//! Exit codes: 0 for any verdict, 2 for input errors, 3 when an internal
//! invariant fails (a suite failure or an unverified fixed point).

mod commands;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use wreathplane::checks::Suite;
use wreathplane::format::{FieldJob, ScenarioFile};

#[derive(Parser, Debug)]
#[command(name = "wreathplane", version, about = "Exact fixed-point analysis of wreath-type actions over projective planes")]
struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the projection of the group to the projective group.
    Classify(ClassifyArgs),
    /// Run the full decision pipeline.
    Decide(DecideArgs),
    /// Walk the orbit of a point under an element.
    Orbit(OrbitArgs),
    /// Neighbourhood constant of a very proximal element.
    Nsd(NsdArgs),
    /// Emit the forward trajectory of a point as CSV or SVG.
    Trajectory(TrajectoryArgs),
    /// Run a property suite.
    Check(CheckArgs),
    /// Print a scenario file in canonical form.
    Fmt(FileArg),
}

#[derive(Args, Debug)]
struct FileArg {
    file: PathBuf,
}

#[derive(Args, Debug)]
pub(crate) struct ClassifyArgs {
    file: PathBuf,
    #[arg(long)]
    word_bound: Option<usize>,
    /// Comma separated places, e.g. `real,padic(2)`.
    #[arg(long)]
    places: Option<String>,
}

#[derive(Args, Debug)]
pub(crate) struct DecideArgs {
    file: PathBuf,
    #[arg(long)]
    word_bound: Option<usize>,
    #[arg(long)]
    places: Option<String>,
}

#[derive(Args, Debug)]
pub(crate) struct ElementArgs {
    /// Word in the generators naming the element; defaults to the file's
    /// `element` option, then to the first generator.
    #[arg(long)]
    element: Option<String>,
    /// Point literal `[a:b:c]`; defaults to the file's `point` option.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args, Debug)]
pub(crate) struct OrbitArgs {
    file: PathBuf,
    #[command(flatten)]
    element: ElementArgs,
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Args, Debug)]
pub(crate) struct NsdArgs {
    file: PathBuf,
    #[arg(long)]
    element: Option<String>,
    /// Rational in (0, 1); defaults to the file's `epsilon` option, then 1/4.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    cap: Option<usize>,
    /// Defaults to the first place of the file's `places` option, then `real`.
    #[arg(long)]
    place: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum TrajectoryFormat {
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub(crate) struct TrajectoryArgs {
    file: PathBuf,
    #[command(flatten)]
    element: ElementArgs,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = TrajectoryFormat::Csv)]
    format: TrajectoryFormat,
    /// Place used for the distance column and `p₊`.
    #[arg(long, default_value = "real")]
    place: String,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// One of metric, algebra, fixed, proximal, fibration, decency, nsd, all.
    #[arg(long)]
    suite: String,
}

#[derive(Debug, Error)]
pub(crate) enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

/// Command output; `failed` carries an invariant violation found while
/// producing it, reported after the output is written.
pub(crate) struct Output {
    pub(crate) text: String,
    pub(crate) failed: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: None }
    }
}

fn load(path: &Path) -> Result<ScenarioFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ScenarioFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run_on_file<J: FieldJob<Output = Result<Output, CliError>>>(path: &Path, make: impl FnOnce(ScenarioFile) -> J) -> Result<Output, CliError> {
    let file = load(path)?;
    let ambient = file.ambient.value;
    ambient
        .dispatch(make(file))
        .map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        })
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let seed = cli.seed;
    let out = match cli.command {
        Command::Classify(a) => run_on_file(&a.file.clone(), |file| commands::Classify { file, args: a })?,
        Command::Decide(a) => run_on_file(&a.file.clone(), |file| commands::Decide { file, args: a })?,
        Command::Orbit(a) => run_on_file(&a.file.clone(), |file| commands::Orbit { file, args: a })?,
        Command::Nsd(a) => run_on_file(&a.file.clone(), |file| commands::Nsd { file, args: a, seed })?,
        Command::Fmt(a) => run_on_file(&a.file.clone(), |file| commands::Fmt { file })?,
        Command::Trajectory(a) => {
            let target = a.output.clone();
            let out = run_on_file(&a.file.clone(), |file| commands::Trajectory { file, args: a })?;
            return Ok((out, target));
        }
        Command::Check(a) => commands::check(&a.suite, seed)?,
    };
    Ok((out, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, target)) => {
            let written = match target {
                Some(path) => std::fs::write(&path, &out.text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            let status = written.and_then(|_| match out.failed {
                Some(m) => Err(CliError::Invariant(m)),
                None => Ok(()),
            });
            match status {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.code())
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn parse_suites(name: &str) -> Result<Vec<Suite>, CliError> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.parse::<Suite>().map(|s| vec![s]).map_err(CliError::Input)
}
