use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "realexp",
    version,
    about = "Box modules and resolutions over real-exponent polynomial rings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: `q` or `p:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Grid,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a complex and print it as JSON.
    Construct(ConstructArgs),
    /// Cellwise homology of a constructed or stored complex.
    Homology(HomologyArgs),
    /// `dim Tor_i(k, B_n^ε)` via the Koszul complex.
    Tor(TorArgs),
    /// Issue or verify an Ext^{n+1}(k, -) certificate.
    ExtCert(ExtCertArgs),
    /// Projective resolution of a module with the stabilization report.
    Presolve(PresolveArgs),
    /// Queries against an exponent group.
    Group(GroupArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    OpenKoszul,
    Koszul,
    Orthant,
    Flat,
    Augmented,
    Presolve,
    TotalKoszul,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstructionArgs {
    /// Ambient dimension.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Comma-separated exponent vector for Koszul and total Koszul complexes.
    #[arg(long)]
    pub eps: Option<String>,
    /// Comma-separated 0/1 mask of open coordinates for orthant resolutions.
    #[arg(long)]
    pub sigma: Option<String>,
    /// First truncation point; the sequence halves from here.
    #[arg(long)]
    pub e0: Option<String>,
    /// Truncation depth K.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Named fixture: k, R, R/I, R/I', B.
    #[arg(long)]
    pub module: Option<String>,
    /// Module JSON file (`{"n", "boxes": [...]}`).
    #[arg(long)]
    pub module_file: Option<PathBuf>,
    /// Group JSON file; sequences are then drawn from the group's rays.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Lattice refinement `2^m` for the discretized total Koszul complex.
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Window `[0, window·ε]` for the discretized total Koszul complex.
    #[arg(long, default_value_t = 4)]
    pub window: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstructArgs {
    #[arg(long = "kind", value_enum)]
    pub kind: Construction,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ConstructionArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct HomologyArgs {
    /// Build this complex on the fly.
    #[arg(long, value_enum, conflicts_with = "file")]
    pub construct: Option<Construction>,
    /// Complex JSON as printed by `construct`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ConstructionArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TorArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated ε; a single value is repeated n times.
    #[arg(long)]
    pub eps: String,
    #[arg(long)]
    pub i: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExtCertArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    /// First truncation point in one variable; the sequence halves from here.
    #[arg(long, default_value = "1")]
    pub e0: String,
    /// Exponent of the generators of J.
    #[arg(long, default_value = "1")]
    pub exponent: String,
    /// Re-verify a stored certificate instead of issuing one.
    #[arg(long)]
    pub verify: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PresolveArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub module_file: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// Include the full complex in the output.
    #[arg(long)]
    pub complex: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GroupArgs {
    #[arg(value_enum)]
    pub query: GroupQuery,
    /// Group JSON file.
    #[arg(long)]
    pub file: PathBuf,
    /// Axis for `ray` and `sequence`: x, y, z or a 0-based index.
    #[arg(long)]
    pub axis: Option<String>,
    /// Comma-separated vector for `member` and `open-cone`.
    #[arg(long)]
    pub vector: Option<String>,
    /// Length of the sequence for `sequence`.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupQuery {
    Ray,
    Member,
    OpenCone,
    Sequence,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = SelftestDepth::Small)]
    pub depth: SelftestDepth,
    /// Corrupt the fixture of this criterion, to check failures surface.
    #[arg(long)]
    pub corrupt: Option<u8>,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SelftestDepth {
    Small,
    Full,
}
