//! `heckeflow`: orbits, lens spaces, invariants and diagrams from the command line.
//!
//! Exit codes: 0 on success, 2 when input is rejected, 3 when a computation
//! or an output write fails.

mod commands;
mod config;
mod svg;
mod words;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{OutputFormat, Overrides, RunConfig};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn computation(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

#[derive(Parser)]
#[command(name = "heckeflow", version, about = "Periodic orbits of Hecke geodesic flows")]
struct Cli {
    /// Run configuration file (`key = value` lines)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Order of the cone point (odd, >= 3)
    #[arg(long)]
    k: Option<u32>,
    /// Cusp opening beyond the lattice distance
    #[arg(long)]
    d_offset: Option<f64>,
    /// Parabolic band around |trace| = 2
    #[arg(long, env = "HECKEFLOW_TOL")]
    tol: Option<f64>,
    /// TDL template instead of the built-in one
    #[arg(long, value_name = "FILE")]
    template: Option<PathBuf>,
    /// Write here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WordArgs {
    /// Orbit words, e.g. `1,2` or `(L,R)` or `L0,L1`
    words: Vec<String>,
    /// Accept non-hyperbolic words (template orbits that are not geodesics)
    #[arg(long)]
    template_only: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lens space containing the unit tangent bundle for each gluing parameter
    Lens {
        #[arg(long, default_value_t = 2)]
        n: i64,
        #[arg(long)]
        k: i64,
        /// A value or an inclusive range `a..b`
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        format: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Primitive words with their isometry class and linking with the missing fiber
    Orbits {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        max_len: Option<usize>,
        /// Only hyperbolic words
        #[arg(long)]
        geodesics: bool,
        #[arg(long)]
        format: Option<String>,
    },
    /// Braid, writhe, genus and linking of orbits
    Invariants {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        words: WordArgs,
        /// Also run the diagram-reduction oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        format: Option<String>,
    },
    /// SVG strand diagram of the orbits' braid closure
    Svg {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        words: WordArgs,
    },
    /// Template descriptions
    #[command(subcommand)]
    Template(TemplateCommand),
}

#[derive(Subcommand)]
enum TemplateCommand {
    /// Print the built-in (or given) template as TDL
    Dump {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a TDL file
    Validate { file: PathBuf },
}

fn resolve(cli_config: Option<&Path>, run: &RunArgs, max_len: Option<usize>, format: Option<String>) -> Result<RunConfig, Failure> {
    RunConfig::resolve(
        cli_config,
        &Overrides {
            k: run.k,
            d_offset: run.d_offset,
            max_word_len: max_len,
            tolerance: run.tol,
            template: run.template.clone(),
            output: format,
        },
    )
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::computation(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::computation(format!("cannot write to stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = cli.config.as_deref();
    match cli.command {
        Command::Lens { n, k, c, format, out } => {
            let format = match format {
                Some(f) => resolve(None, &RunArgs::default(), None, Some(f))?.output,
                None => match file {
                    Some(_) => resolve(file, &RunArgs::default(), None, None)?.output,
                    None => OutputFormat::Jsonl,
                },
            };
            emit(out.as_deref(), &commands::lens(n, k, &c, format)?)
        }
        Command::Orbits { run, max_len, geodesics, format } => {
            let cfg = resolve(file, &run, max_len, format)?;
            emit(run.out.as_deref(), &commands::orbits(&cfg, geodesics)?)
        }
        Command::Invariants { run, words, oracle, format } => {
            let cfg = resolve(file, &run, None, format)?;
            let text = commands::invariants(&cfg, &words.words, words.template_only, oracle)?;
            emit(run.out.as_deref(), &text)
        }
        Command::Svg { run, words } => {
            let cfg = resolve(file, &run, None, None)?;
            emit(run.out.as_deref(), &commands::svg(&cfg, &words.words, words.template_only)?)
        }
        Command::Template(TemplateCommand::Dump { run }) => {
            let cfg = resolve(file, &run, None, None)?;
            emit(run.out.as_deref(), &commands::template_dump(&cfg)?)
        }
        Command::Template(TemplateCommand::Validate { file }) => {
            emit(None, &commands::template_validate(&file)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
