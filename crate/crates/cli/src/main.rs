mod commands;
mod explore;
mod report;
mod verify;

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Parser)]
#[command(name = "semiact", version, about = "Exact external semi-activity polynomials and their graph specialisations")]
struct Cli {
    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f_A(t) of a flat matrix, or of the standard orientation of a bipartite graph.
    Fa(FaArgs),
    /// k-spanning-tree polynomial P_D(t) of a connected Eulerian digraph.
    Pd(PdArgs),
    /// Alexander polynomial coefficients of the special alternating link of a plane bipartite graph.
    Alexander(AlexanderArgs),
    /// Trimmed lattice points of a zonotope and their level counts.
    Zonotope(ZonotopeArgs),
    /// Flat max-positive matrix from a network, a C matrix, or at random.
    Tp(TpArgs),
    /// Search for a d-box-positive decomposition of a polynomial.
    Boxcert(BoxcertArgs),
    /// Run a named verification suite on an input or the built-in corpus.
    Verify(VerifyArgs),
    /// Generate random instances and record the shape of their polynomials.
    Explore(ExploreArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["matrix", "bigraph"])))]
pub struct FaArgs {
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// bigraph-v1 file; requires --standard-orientation
    #[arg(long, requires = "standard_orientation")]
    pub bigraph: Option<PathBuf>,
    /// Orient every edge of the bipartite graph from its first part to its second.
    #[arg(long)]
    pub standard_orientation: bool,
    /// Also recompute with this many random generic vectors and compare.
    #[arg(long, default_value_t = 0)]
    pub rho_trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct PdArgs {
    #[arg(long)]
    pub digraph: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
}

#[derive(Args)]
pub struct AlexanderArgs {
    #[arg(long)]
    pub plane: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["matrix", "bigraph"])))]
pub struct ZonotopeArgs {
    /// matrix-v1 file with integer entries; requires --l and --m
    #[arg(long, requires_all = ["l", "m"])]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub bigraph: Option<PathBuf>,
    /// Trimming direction, comma separated integers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<i64>>,
    /// Number of positive coefficients of l in every basis.
    #[arg(long)]
    pub m: Option<usize>,
    /// Include the trimmed points in the report.
    #[arg(long)]
    pub points: bool,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["network", "c", "random"])))]
pub struct TpArgs {
    #[arg(long)]
    pub network: Option<PathBuf>,
    /// matrix-v1 file holding C
    #[arg(long)]
    pub c: Option<PathBuf>,
    /// Draw a random grid network of shape --d x --n.
    #[arg(long, requires_all = ["d", "n"])]
    pub random: bool,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct BoxcertArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub d: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Thm3_5,
    Thm5_3,
    Cor5_4,
    Thm6_7,
    Thm7_2,
    Thm8_8,
    Lemma8_1,
    Lemma8_3,
}

#[derive(Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub digraph: Option<PathBuf>,
    #[arg(long)]
    pub bigraph: Option<PathBuf>,
    #[arg(long)]
    pub plane: Option<PathBuf>,
    #[arg(long)]
    pub network: Option<PathBuf>,
    /// matrix-v1 file holding C
    #[arg(long)]
    pub c: Option<PathBuf>,
    /// Random instances or random vectors, depending on the suite.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Semibalanced,
    RandomFlat,
    Tp,
}

#[derive(Args)]
pub struct ExploreArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Semi-balanced family only: two levels, i.e. standard orientations of
    /// bipartite graphs.
    #[arg(long)]
    pub standard: bool,
}

/// An input or usage problem; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn dispatch(command: &Command) -> Result<RunReport, InputError> {
    match command {
        Command::Fa(a) => commands::fa(a),
        Command::Pd(a) => commands::pd(a),
        Command::Alexander(a) => commands::alexander(a),
        Command::Zonotope(a) => commands::zonotope(a),
        Command::Tp(a) => commands::tp(a),
        Command::Boxcert(a) => commands::boxcert(a),
        Command::Verify(a) => verify::run(a),
        Command::Explore(a) => explore::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let text = if cli.pretty { report.to_text() } else { report.to_json() + "\n" };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
