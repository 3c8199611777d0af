mod commands;
mod family;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superderiv::dersolve::{MapParity, Mode};
use superderiv::exactfield::Scalar;
use superderiv::suite::Tier;

/// Exact δ-derivations and δ-superderivations of finite-dimensional superalgebras.
#[derive(Parser, Debug)]
#[command(name = "alg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Build a named algebra and write its multiplication table as JSON.
    Build(BuildArgs),
    /// Check a table against the identities of a variety.
    Check(CheckArgs),
    /// Solve for the δ-(super)derivations at one δ.
    Derive(QueryArgs),
    /// Find every δ where the δ-(super)derivation space jumps.
    Scan(ScanArgs),
    /// Compute the centroid, or one parity block of the supercentroid.
    Centroid(CentroidArgs),
    /// Peirce decomposition relative to registered or given idempotents.
    Peirce(PeirceArgs),
    /// Root decomposition of a Cartan-type Lie superalgebra.
    Roots(RootsArgs),
    /// Solve at one δ and compare the result with the trivial maps.
    Classify(QueryArgs),
    /// Run the verification battery and write a report.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// W, S, Stilde, H, sl, Mplus, Qplus, P, osp, JVf, Dt, K3, K10, JGamma, Hermitian, HermitianSum,
    /// M2, QuasiM2; `H2` and `H3` abbreviate `Hermitian --n 2|3`.
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<Scalar>,
    /// Replacement K10 multiplication table.
    #[arg(long)]
    pub k10_table: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axioms {
    LieSuper,
    JordanSuper,
    FlexibleSuper,
    NcJordanSuper,
    Lie,
    Jordan,
    Flexible,
    NcJordan,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub algebra: PathBuf,
    #[arg(long, value_enum)]
    pub axioms: Axioms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Super,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Plain => Mode::Derivation,
            ModeArg::Super => Mode::Superderivation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
    Any,
}

impl From<ParityArg> for MapParity {
    fn from(p: ParityArg) -> MapParity {
        match p {
            ParityArg::Even => MapParity::Even,
            ParityArg::Odd => MapParity::Odd,
            ParityArg::Any => MapParity::Any,
        }
    }
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    pub algebra: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Scalar,
    /// Defaults to `any` for plain derivations and `even` for superderivations.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    #[arg(long, value_enum, default_value = "plain")]
    pub mode: ModeArg,
    /// Include a basis of the solution space.
    #[arg(long)]
    pub emit_basis: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    pub algebra: PathBuf,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    #[arg(long, value_enum, default_value = "plain")]
    pub mode: ModeArg,
    /// Seed for the sampled minors.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CentroidArgs {
    pub algebra: PathBuf,
    /// Use the Koszul-signed supercentroid.
    #[arg(long = "super")]
    pub superr: bool,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    #[arg(long)]
    pub emit_basis: bool,
}

#[derive(Args, Debug)]
pub struct PeirceArgs {
    pub algebra: PathBuf,
    /// Comma-separated coordinates of an idempotent; defaults to the registered ones.
    #[arg(long, allow_hyphen_values = true)]
    pub idempotent: Option<String>,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    pub algebra: PathBuf,
    /// W, S, Stilde or H; read from the algebra name when absent.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Markdown,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value = "paper")]
    pub suite: SuiteName,
    #[arg(long, default_value = "fast")]
    pub tier: Tier,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long)]
    pub k10_table: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("alg: {e}");
            ExitCode::from(e.code())
        }
    }
}
