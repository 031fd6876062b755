use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "csm", version, about = "CSM classes of Schubert cells and verification sweeps")]
pub struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print c(w;v) (or c_T(w;v) with --equivariant) for every v.
    Csm(CsmArgs),
    /// Sweep an identity: main, lr, ct, top, fwvu, pushforward, redword.
    Verify {
        identity: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Sweep a conjecture: csm-positivity, refined, f-nonneg, equivariant-positivity.
    Conjecture {
        name: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args, Debug)]
pub struct CsmArgs {
    /// Cartan type label (A2, B2, G2, ...) or a JSON matrix file.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,

    /// Shorthand for type A(n-1).
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated word (`1,2,1`) or one-line permutation (`[3,2,1]`).
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,

    /// Only report the coefficient of this element.
    #[arg(long)]
    pub v: Option<String>,

    #[arg(long)]
    pub equivariant: bool,

    /// Reuse results stored under $CSM_CACHE_DIR (default ./.csm-cache).
    #[arg(long)]
    pub cache: bool,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long = "type")]
    pub cartan_type: Option<String>,

    #[arg(long)]
    pub n: Option<usize>,

    /// Allow groups larger than S6.
    #[arg(long)]
    pub force: bool,

    /// Check a seeded random sample of (w, v) pairs (ct only).
    #[arg(long)]
    pub sample: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, conflicts_with = "md")]
    pub csv: bool,

    #[arg(long)]
    pub md: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
        }
    }
}

impl Output {
    pub fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else if self.md {
            Format::Markdown
        } else {
            Format::Json
        }
    }
}
