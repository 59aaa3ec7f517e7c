use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "upset",
    version,
    about = "Universal point sets: gadgets, embeddings, witnesses and tail bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Write the nested-triangle gadget graph as an edge list.
    Gadget(GadgetArgs),
    /// Draw a maximal planar graph on the (2n-4) x (n-2) grid.
    GridEmbed(GridEmbedArgs),
    /// Search for a crossing-free embedding of a graph into a point set.
    EmbedCheck(EmbedCheckArgs),
    /// Extract a monotone witness from a drawing of the gadget.
    Witness(WitnessArgs),
    /// Try to certify that a point set is not n-universal.
    Certify(CertifyArgs),
    /// Longest increasing and decreasing subsequence of a permutation.
    Lis(LisArgs),
    /// Threshold m_max = floor((n/48e)^2) and tail 8*4^(-n/12).
    Bound(BoundArgs),
    /// Evaluate the union-bound / Stirling inequality chain.
    Chain(ChainArgs),
    /// Monte Carlo estimate of P(max(lis, lds) >= ell).
    Mc(McArgs),
    /// Monte Carlo run at the theorem threshold for n.
    Thm1(Thm1Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gadget(_) => "gadget",
            Command::GridEmbed(_) => "grid-embed",
            Command::EmbedCheck(_) => "embed-check",
            Command::Witness(_) => "witness",
            Command::Certify(_) => "certify",
            Command::Lis(_) => "lis",
            Command::Bound(_) => "bound",
            Command::Chain(_) => "chain",
            Command::Mc(_) => "mc",
            Command::Thm1(_) => "thm1",
        }
    }

    pub fn master_seed(&self) -> Option<u64> {
        match self {
            Command::Mc(a) => Some(a.seed),
            Command::Thm1(a) => Some(a.seed),
            _ => None,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GadgetArgs {
    #[arg(long)]
    pub n: usize,
    /// Output file; the edge list goes to stdout when omitted.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GridEmbedArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Point set file to write (CSV, one point per vertex in vertex order).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedCheckArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    /// Maximum number of (vertex, point) candidates to try.
    #[arg(long, default_value_t = upset_core::embedder::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    /// JSON with a `placement` array of `[v, x, y]` (grid-embed or embed-check output).
    #[arg(long)]
    pub placement: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct LisArgs {
    /// Comma-separated permutation of 1..m, e.g. "5,1,4,2,3".
    #[arg(long)]
    pub perm: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ChainArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub ell: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Points,
    Perm,
}

#[derive(Debug, Args, Serialize)]
pub struct Sweep {
    /// Worker threads (overridden by UPSET_WORKERS).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct McArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Points)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: Sweep,
}

#[derive(Debug, Args, Serialize)]
pub struct Thm1Args {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Sample this many points instead of the threshold size.
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: Sweep,
}
