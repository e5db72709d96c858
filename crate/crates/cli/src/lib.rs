//! Command-line driver for the `rcurves` library.
//!
//! Every subcommand accepts the same flat options; they can also come from a
//! `key=value` file given with `--config`, with flags taking precedence.
//! Reports go to stdout (or `--out`) as CSV or JSON; failures print a JSON
//! error record on stderr and exit with 2 (config), 3 (budget), 4 (invalid
//! model) or 1 (I/O).

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};

use crate::config::{normalize_key, parse_kv, Command, RunConfig};
use crate::error::CliError;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "rcurves", version, about = "Exact rational curve counts on split del Pezzo surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Exact and virtual counts for one class.
    Count(Opts),
    /// The Tamagawa number with its certified tail bound.
    Tamagawa(Opts),
    /// Count table over the classes of a cone up to a height.
    Scan(Opts),
    /// Normalized counts of the multiples of a class against tau.
    Converge(Opts),
    /// Upper-bound audit over the regime classes of a cone.
    AuditUpper(Opts),
    /// Diagonal coefficients of the virtual zeta function against their limit.
    Limits(Opts),
    /// (-1)-classes, conic classes and blow-down data.
    Cones(Opts),
    /// Admissibility constants for one class.
    Admissible(Opts),
}

#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// File of `key=value` lines; flags override it.
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    /// Model file.
    #[arg(long)]
    pub model: Option<String>,
    /// Model text with `;` separating lines.
    #[arg(long)]
    pub model_text: Option<String>,
    /// `r; f f' e1 .. er` or `-K`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub a_prime: Option<String>,
    /// Comma-separated multiplicities.
    #[arg(long)]
    pub k: Option<String>,
    /// `nef`, `eps:<x>`, `phi:<x>:<i>` or `ray:<class>`.
    #[arg(long, allow_hyphen_values = true)]
    pub cone: Option<String>,
    #[arg(long)]
    pub hmax: Option<String>,
    #[arg(long)]
    pub mmax: Option<String>,
    #[arg(long)]
    pub nmax: Option<String>,
    /// Euler-product cutoff degree.
    #[arg(long = "D", visible_alias = "d")]
    pub d: Option<String>,
    /// `naive` or `accelerated`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub budget: Option<String>,
    /// `torsor` or `direct`.
    #[arg(long)]
    pub convention: Option<String>,
    #[arg(long)]
    pub include_zero: Option<String>,
    /// Compute the virtual counts (`true` or `false`).
    #[arg(long = "virtual")]
    pub virtual_counts: Option<String>,
    /// `csv` or `json`.
    #[arg(long)]
    pub format: Option<String>,
    /// Output path, `-` for stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
}

impl Opts {
    fn pairs(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("q", &self.q),
            ("r", &self.r),
            ("model", &self.model),
            ("model_text", &self.model_text),
            ("class", &self.class),
            ("a", &self.a),
            ("a_prime", &self.a_prime),
            ("k", &self.k),
            ("cone", &self.cone),
            ("hmax", &self.hmax),
            ("mmax", &self.mmax),
            ("nmax", &self.nmax),
            ("d", &self.d),
            ("mode", &self.mode),
            ("budget", &self.budget),
            ("convention", &self.convention),
            ("include_zero", &self.include_zero),
            ("virtual", &self.virtual_counts),
            ("format", &self.format),
            ("out", &self.out),
            ("threads", &self.threads),
        ]
    }

    /// Merges the config file (if any) with the flags.
    pub fn to_map(&self) -> Result<BTreeMap<String, String>, CliError> {
        let mut map = match &self.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading config {path}: {e}")))?;
                parse_kv(&text)?
            }
            None => BTreeMap::new(),
        };
        for (k, v) in self.pairs() {
            if let Some(v) = v {
                map.insert(normalize_key(k), v.clone());
            }
        }
        Ok(map)
    }
}

impl Sub {
    pub fn split(&self) -> (Command, &Opts) {
        match self {
            Sub::Count(o) => (Command::Count, o),
            Sub::Tamagawa(o) => (Command::Tamagawa, o),
            Sub::Scan(o) => (Command::Scan, o),
            Sub::Converge(o) => (Command::Converge, o),
            Sub::AuditUpper(o) => (Command::AuditUpper, o),
            Sub::Limits(o) => (Command::Limits, o),
            Sub::Cones(o) => (Command::Cones, o),
            Sub::Admissible(o) => (Command::Admissible, o),
        }
    }
}

/// Builds the report on a pool of `cfg.threads` workers (the global pool
/// when unset).
pub fn build_report(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
            pool.install(|| commands::execute(cfg))
        }
        None => commands::execute(cfg),
    }
}

/// Parses `args` (program name first) and renders the report text.
pub fn render<I, T>(args: I) -> Result<(RunConfig, String), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::config(e.to_string().trim_end()))?;
    let (command, opts) = cli.command.split();
    let cfg = RunConfig::from_map(command, &opts.to_map()?)?;
    let text = build_report(&cfg)?.emit(cfg.format);
    Ok((cfg, text))
}

/// Entry point of the binary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&args) {
        if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
            print!("{e}");
            return 0;
        }
    }
    let outcome = render(args).and_then(|(cfg, text)| match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(format!("writing {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(format!("writing stdout: {e}")))
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}
