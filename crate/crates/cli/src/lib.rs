//! `atiyahdet`: evaluate normalized determinants, run property suites,
//! sweep radii, search for small `|D|` and check the moduli identities.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod input;
pub mod manifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "ATIYAHDET_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) | CliError::Io { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_INPUT_ERROR,
        }
    }

    pub(crate) fn in_batch(self, index: usize) -> Self {
        match self {
            CliError::Schema(m) => CliError::Schema(format!("configuration {index}: {m}")),
            CliError::Validation(m) => CliError::Validation(format!("configuration {index}: {m}")),
            other => other,
        }
    }
}

impl From<atiyah_core::Error> for CliError {
    fn from(e: atiyah_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<atiyah_moduli::Error> for CliError {
    fn from(e: atiyah_moduli::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "atiyahdet",
    version,
    about = "Normalized determinants of point configurations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate D for a configuration (or a batch) from a JSON file.
    Eval(EvalArgs),
    /// Run named property suites over seeded random configurations.
    Verify(VerifyArgs),
    /// |D_R| over a grid of ball radii for fixed points.
    Sweep(SweepArgs),
    /// Random-restart descent on |D| looking for counterexamples.
    Search(SearchArgs),
    /// Exact checks of the moduli-space and point-count identities.
    Moduli(ModuliArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for atiyah_core::Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => atiyah_core::Precision::Double,
            PrecisionArg::Extended => atiyah_core::Precision::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Euclidean,
    Hyperbolic,
    Minkowski,
}

impl From<GeometryArg> for atiyah_core::Geometry {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::Euclidean => atiyah_core::Geometry::Euclidean,
            GeometryArg::Hyperbolic => atiyah_core::Geometry::Hyperbolic,
            GeometryArg::Minkowski => atiyah_core::Geometry::Minkowski,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write results here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json` when --out is given.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "double")]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Slack on |D| >= 1 before a Euclidean or hyperbolic value fails.
    #[arg(long, default_value_t = atiyah_core::conjecture::BOUND_TOLERANCE)]
    tolerance: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per check; each suite has its own default.
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads (overrides ATIYAHDET_THREADS).
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Euclidean or hyperbolic configuration; only the points are used.
    #[arg(long)]
    input: PathBuf,
    /// Number of geometric radii from 1.01 max|x| to 1e6 max|x|, or an
    /// explicit comma-separated increasing list.
    #[arg(long, default_value = "20")]
    grid: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "euclidean")]
    geometry: GeometryArg,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Ball radius for hyperbolic searches.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Largest world-line speed for Minkowski searches.
    #[arg(long, default_value_t = 0.99)]
    velocity_cap: f64,
    /// Allow world lines at or above light speed.
    #[arg(long)]
    allow_superluminal: bool,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Records with best |D| below this are rechecked in extended precision.
    #[arg(long, default_value_t = atiyah_core::search::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Simplex iterations per restart.
    #[arg(long, default_value_t = atiyah_core::search::DescentOptions::default().max_iterations)]
    max_iterations: usize,
    /// Descend from this configuration instead of random starts.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ModuliArgs {
    #[arg(long, default_value_t = 2)]
    genus: u32,
    /// Series order for the decomposition checks; defaults to 6g.
    #[arg(long)]
    order: Option<usize>,
    /// json or csv; plain text when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Where a command's result goes, and what it produced.
pub(crate) struct Sink<'a> {
    stdout: &'a mut dyn Write,
    out: Option<PathBuf>,
    manifest: Option<PathBuf>,
}

impl Sink<'_> {
    fn new<'a>(stdout: &'a mut dyn Write, args: &OutputArgs) -> Sink<'a> {
        let manifest = args
            .manifest
            .clone()
            .or_else(|| args.out.as_deref().map(manifest::default_path));
        Sink {
            stdout,
            out: args.out.clone(),
            manifest,
        }
    }

    /// Writes the main payload to --out or stdout.
    fn emit(&mut self, payload: &[u8]) -> Result<(), CliError> {
        match &self.out {
            Some(path) => write_file(path, payload),
            None => self.stdout.write_all(payload).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
        }
    }

    fn print(&mut self, payload: &[u8]) -> Result<(), CliError> {
        self.stdout.write_all(payload).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    }

    fn finish(&self, mut manifest: manifest::RunManifest, extra: Vec<PathBuf>) -> Result<(), CliError> {
        let Some(path) = &self.manifest else {
            return Ok(());
        };
        let mut outputs: Vec<PathBuf> = self.out.iter().cloned().collect();
        outputs.extend(extra);
        manifest.finish(outputs);
        manifest.write(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        return if n == 0 {
            Err(CliError::Input("--threads must be at least 1".to_string()))
        } else {
            Ok(Some(n))
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Input(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code: 0 success, 1 a check failed, 2 bad input.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT_ERROR };
        }
    };

    if let Err(msg) = atiyah_core::det::self_check() {
        let _ = writeln!(stderr, "atiyahdet: startup self-check failed: {msg}");
        return EXIT_CHECK_FAILED;
    }

    let result = match &cli.command {
        Command::Eval(a) => commands::eval(a, &mut Sink::new(stdout, &a.output)),
        Command::Verify(a) => commands::verify(a, stderr, &mut Sink::new(stdout, &a.output)),
        Command::Sweep(a) => commands::sweep(a, &mut Sink::new(stdout, &a.output)),
        Command::Search(a) => commands::search(a, stderr, &mut Sink::new(stdout, &a.output)),
        Command::Moduli(a) => commands::moduli(a, &mut Sink::new(stdout, &a.output)),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "atiyahdet: {e}");
            e.exit_code()
        }
    }
}
