//! `polygrowth` command-line tool.
//!
//! Exit codes: 0 success, 1 a closed form failed, 2 malformed input,
//! 3 budget exhausted, 4 divergence not certified, 5 ambiguous verdict,
//! 6 data not geometric.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod format;
pub mod report;

use config::{ConfigError, ConfigFile};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;
pub const EXIT_AMBIGUOUS: i32 = 5;
pub const EXIT_NON_GEOMETRIC: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "polygrowth",
    version,
    about = "Certified growth constants of polynomial recursions x_{n+1} = P(x_n)",
    after_help = "Digits are significant decimal digits of alpha, truncated (not rounded); \
                  only digits shared by every point of the certified enclosure are printed.\n\
                  Exit codes: 0 ok, 1 closed form failed, 2 malformed input, 3 budget exhausted, \
                  4 divergence not certified, 5 ambiguous, 6 non-geometric data."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact iterates x_0..x_steps.
    Iterate(IterateArgs),
    /// Certified decimal digits of the growth constant alpha.
    Alpha(AlphaArgs),
    /// Check x_n = floor(A alpha^(d^n) + B) or its rounding variant.
    Verify(VerifyArgs),
    /// Irrationality certificate, optionally with an algebraic-candidate probe.
    Classify(ClassifyArgs),
    /// Fit A alpha^n + B to a b-file (estimates, not certified).
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Polynomial P in x, e.g. "x^2 - x + 1" or "1/2*x^2 + 3".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Starting value x0 (integer, p/q or decimal).
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Sequence index carried by x0.
    #[arg(long)]
    pub offset: Option<usize>,
    /// Maximum number of iteration steps.
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Maximum decimal size of a single iterate.
    #[arg(long)]
    pub digit_budget: Option<u64>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// `key = value` file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Omit the wall-time line.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct IterateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of steps to take.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Values longer than this many characters print as a digit count.
    #[arg(long)]
    pub print_limit: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Significant digits to certify (truncated).
    #[arg(long)]
    pub digits: Option<u32>,
    /// Enclosure radius to aim for, e.g. 1e-30 (default 10^-(digits+2)).
    #[arg(long)]
    pub target_radius: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// floor, round or auto.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long)]
    pub to: Option<usize>,
    /// Upper limit on the working accuracy, in bits.
    #[arg(long)]
    pub max_bits: Option<u64>,
    #[arg(long)]
    pub print_limit: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub target_radius: Option<String>,
    /// Upper limit on adaptive tightening, in bits.
    #[arg(long)]
    pub max_bits: Option<u64>,
    /// Degree bound for the algebraic-candidate probe.
    #[arg(long)]
    pub alg_degree: Option<usize>,
    /// Height bound for the algebraic-candidate probe.
    #[arg(long)]
    pub alg_height: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// b-file with `index value` lines.
    #[arg(long)]
    pub bfile: Option<PathBuf>,
    /// Fit the last WINDOW entries only.
    #[arg(long)]
    pub window: Option<usize>,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(EXIT_INPUT, e.to_string())
    }
}

/// A finished command: the report and the exit code it implies.
pub struct Finished {
    pub report: Report,
    pub code: i32,
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Iterate(a) => &a.common,
            Command::Alpha(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Classify(a) => &a.common,
            Command::Fit(a) => &a.common,
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let common = cli.command.common();
    let file = match &common.config {
        Some(path) => match ConfigFile::load(path) {
            Ok(f) => f,
            Err(e) => return failure_outcome(OutputFormat::Text, Failure::from(e)),
        },
        None => ConfigFile::default(),
    };
    let output = match config::pick(common.output, &file, "output", OutputFormat::Text) {
        Ok(o) => o,
        Err(e) => return failure_outcome(OutputFormat::Text, e.into()),
    };
    let no_timing = common.no_timing || file.get::<bool>("no_timing").ok().flatten().unwrap_or(false);
    let result = match &cli.command {
        Command::Iterate(a) => commands::iterate(a, &file),
        Command::Alpha(a) => commands::alpha(a, &file),
        Command::Verify(a) => commands::verify(a, &file),
        Command::Classify(a) => commands::classify(a, &file),
        Command::Fit(a) => commands::fit(a, &file),
    };
    match result {
        Ok(mut fin) => {
            if !no_timing {
                fin.report.set("elapsed_ms", start.elapsed().as_millis() as u64);
            }
            let stdout = match output {
                OutputFormat::Text => fin.report.to_text(),
                OutputFormat::Json => fin.report.to_json(),
            };
            Outcome {
                code: fin.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => failure_outcome(output, f),
    }
}

fn failure_outcome(output: OutputFormat, f: Failure) -> Outcome {
    let stdout = match output {
        OutputFormat::Json => {
            let mut r = Report::new();
            r.set("error", f.message.clone());
            r.set("exit_code", f.code);
            r.to_json()
        }
        OutputFormat::Text => String::new(),
    };
    Outcome {
        code: f.code,
        stdout,
        stderr: format!("error: {}\n", f.message),
    }
}
