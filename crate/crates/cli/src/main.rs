//! `truncdom`: broadcast domination on the truncated square tiling.
//!
//! Exit status: 0 success or valid, 1 invalid, 2 input error, 3 timeout.

mod commands;
mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use truncdom::par;
use truncdom::Exec;

#[derive(Parser, Debug)]
#[command(
    name = "truncdom",
    version,
    about = "Broadcast domination on truncated square tiling graphs"
)]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seconds allowed per solve or search.
    #[arg(long, global = true, default_value_t = 300.0)]
    time_limit: f64,
    /// Results cache (JSON lines).
    #[arg(
        long,
        global = true,
        env = "TRUNC_DOM_CACHE",
        default_value = "./trunc-dom-cache.jsonl"
    )]
    cache: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Ascii,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export or draw H_{m,n}.
    Build {
        m: u32,
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Broadcast set file whose towers are marked in drawings.
        #[arg(long)]
        highlight: Option<String>,
    },
    /// Check a broadcast set. GRAPH is grid:M,N, torus:B1X,B1Y,B2X,B2Y, a graph JSON file or -.
    Verify {
        graph: String,
        set: String,
        #[arg(long)]
        r: u32,
        /// Include the full reception map.
        #[arg(long)]
        show_reception: bool,
    },
    /// Exact broadcast domination number of H_{m,n}.
    Gamma {
        m: u32,
        n: u32,
        t: u32,
        r: u32,
        /// Ignore and do not update the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Closed-form lower and upper bounds.
    Bounds { m: u32, n: u32, t: u32, r: u32 },
    /// Periodic broadcasts of the infinite tiling.
    Pattern {
        #[command(subcommand)]
        action: PatternCommand,
    },
    /// Radius, diameter and a center of H_{m,n}.
    Radius { m: u32, n: u32 },
    /// Single-tower thresholds on H_{m,m} against the conjectured formula.
    Conjecture61 {
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = 3)]
        r_max: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum PatternCommand {
    /// Verify a pattern on the whole plane. PATTERN is catalog:T,R, a pattern JSON file or -.
    Verify {
        pattern: String,
        /// Required reception (defaults to the catalogued r).
        #[arg(long)]
        r: Option<u32>,
    },
    /// Exact density of a pattern.
    Density { pattern: String },
    /// Best periodic broadcast over all period lattices up to a determinant.
    Search {
        t: u32,
        r: u32,
        #[arg(long, default_value_t = 6)]
        max_det: i64,
    },
    /// Write the built-in patterns as pattern files.
    ExportCatalog {
        /// Also write one file per pattern into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

pub enum Body {
    Json(serde_json::Value),
    Text(String),
}

/// What a command produced: the payload, a one-line summary and an exit status.
pub struct Outcome {
    pub body: Body,
    pub summary: String,
    pub code: u8,
}

pub struct Config {
    pub exec: Exec,
    pub time_limit: Duration,
    pub cache: PathBuf,
}

fn emit(out: &Outcome, path: Option<&PathBuf>) -> Result<()> {
    let text = match &out.body {
        Body::Json(v) => format!("{}\n", serde_json::to_string_pretty(v)?),
        Body::Text(s) => s.clone(),
    };
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!("{}", out.summary);
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    if !(cli.time_limit > 0.0 && cli.time_limit.is_finite()) {
        anyhow::bail!("--time-limit must be a positive number of seconds");
    }
    let cfg = Config {
        exec: if cli.threads == 1 {
            Exec::Sequential
        } else {
            Exec::default()
        },
        time_limit: Duration::from_secs_f64(cli.time_limit),
        cache: cli.cache,
    };
    let output = cli.output;
    let outcome = par::with_threads(cli.threads, || commands::dispatch(cli.command, &cfg))?;
    emit(&outcome, output.as_ref())?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => ExitCode::from(out.code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
