use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Minimum path cover by subset DP, with a witness.
    Exact,
    /// Local search for a small path cover.
    Search,
    /// Search, then classify, ledger and audit the cover.
    Audit,
    /// Write the input graphs as graph6.
    Generate,
    /// Compare a lower bound with the search result.
    Certify,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Search => "search",
            Mode::Audit => "audit",
            Mode::Generate => "generate",
            Mode::Certify => "certify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Named {
    Petersen,
    K4,
    K33,
    Prism,
}

#[derive(Parser, Debug)]
#[command(name = "cubic-cover", version, about = "Path covers of 2-connected cubic graphs")]
pub struct Args {
    /// MODE followed by graph6 files ("-" reads stdin). With --mode every
    /// positional argument is an input file.
    #[arg(value_name = "MODE|INPUT")]
    pub positional: Vec<String>,

    #[arg(long, value_enum)]
    pub mode: Option<Mode>,

    /// graph6 input file, repeatable.
    #[arg(long = "input", value_name = "FILE")]
    pub input: Vec<PathBuf>,

    #[arg(long, value_enum)]
    pub builtin: Vec<Named>,

    /// Replace every edge of the named graph by a K4 minus an edge.
    #[arg(long, value_enum)]
    pub gadget: Vec<Named>,

    /// Ring of K Petersen copies, each missing one spoke.
    #[arg(long, value_name = "K")]
    pub ring: Vec<usize>,

    /// COUNT random 2-connected cubic graphs on N vertices.
    #[arg(long, num_args = 2, value_names = ["N", "COUNT"])]
    pub random: Vec<usize>,

    /// Every cubic graph on N vertices (N <= 12), up to repeated edge sets.
    #[arg(long, value_name = "N")]
    pub enumerate: Vec<usize>,

    /// Keep only 2-connected graphs from --enumerate.
    #[arg(long)]
    pub biconnected: bool,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub jobs: Option<usize>,

    #[arg(long, default_value_t = cubic_cover::exact::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,

    /// Per-graph search budget in seconds.
    #[arg(long, value_name = "SECONDS")]
    pub time_budget: Option<f64>,

    #[arg(long, default_value_t = 20)]
    pub restarts: usize,

    /// Abort on the first malformed input line instead of skipping it.
    #[arg(long)]
    pub strict: bool,

    #[arg(long, value_name = "DIR", default_value = "cubic-cover-out")]
    pub out: PathBuf,

    /// Ignore and do not write the result cache.
    #[arg(long)]
    pub no_cache: bool,
}

impl Args {
    /// Splits the positional arguments into the mode and input files.
    pub fn resolve(&self) -> Result<(Mode, Vec<PathBuf>), String> {
        let mut files: Vec<PathBuf> = self.input.clone();
        let mode = match self.mode {
            Some(m) => {
                files.extend(self.positional.iter().map(PathBuf::from));
                m
            }
            None => {
                let (first, rest) = self.positional.split_first().ok_or("a mode is required")?;
                files.extend(rest.iter().map(PathBuf::from));
                Mode::from_str(first, true).map_err(|_| format!("unknown mode {first:?}"))?
            }
        };
        Ok((mode, files))
    }

    pub fn random_specs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.random.chunks_exact(2).map(|c| (c[0], c[1]))
    }
}
