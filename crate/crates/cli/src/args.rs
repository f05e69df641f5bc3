use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qrng_core::pqc::{Operation, PqcAlgorithm, PreHash};
use qrng_core::GateRecipe;

#[derive(Debug, Parser)]
#[command(
    name = "qrng",
    version,
    about = "Simulated single-qubit QRNG: generate, validate, benchmark, PQC seed demo"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate bits and write them as a packed bit file plus `.hdr` sidecar.
    Generate(GenerateArgs),
    /// Run the validation battery on a bit file or on fresh generator output.
    Test(TestArgs),
    /// Time bit generation over a (recipe, length, qubit count) grid.
    Bench(BenchArgs),
    /// Run one PQC operation with QRNG-supplied seeds against the mock backend.
    PqcDemo(PqcDemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sequential,
    Restart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SlhMode {
    ThreeCalls,
    SingleCallSplit,
}

pub fn parse_recipe(s: &str) -> Result<GateRecipe, String> {
    s.parse()
        .map_err(|_| format!("unknown recipe `{s}` (expected h, sx, rx, ry, ph or u)"))
}

fn parse_algorithm(s: &str) -> Result<PqcAlgorithm, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_operation(s: &str) -> Result<Operation, String> {
    s.parse()
        .map_err(|_| format!("unknown operation `{s}` (expected keygen, encaps or sign)"))
}

fn parse_pre_hash(s: &str) -> Result<PreHash, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_parser = parse_recipe, default_value = "h")]
    pub recipe: GateRecipe,
    /// Circuit width c.
    #[arg(long, value_parser = positive, default_value_t = 1)]
    pub qubits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Number of bits L.
    #[arg(long, value_parser = positive)]
    pub bits: usize,
    /// Payload path; the header goes to `<out>.hdr`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Bit file to test. Without it, bits come from the generator options.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, value_enum, default_value_t = Mode::Restart)]
    pub mode: Mode,
    /// Sequential dataset length.
    #[arg(long, value_parser = positive, default_value_t = 1_000_000)]
    pub bits: usize,
    #[arg(long, value_parser = positive, default_value_t = 1000)]
    pub restarts: usize,
    /// Restart row length; also the row length a sequential dataset is cut into.
    #[arg(long, value_parser = positive, default_value_t = 1000)]
    pub bits_per_restart: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report destination (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write per-group statistics as CSV.
    #[arg(long)]
    pub groups_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Recipes to time (comma separated). Defaults to all six.
    #[arg(long = "recipe", value_parser = parse_recipe, value_delimiter = ',')]
    pub recipes: Vec<GateRecipe>,
    #[arg(long = "bits", value_parser = positive, value_delimiter = ',', default_value = "256")]
    pub lengths: Vec<usize>,
    #[arg(long = "qubits", value_parser = positive, value_delimiter = ',', default_value = "1,2,4,8")]
    pub qubit_counts: Vec<usize>,
    #[arg(long, value_parser = positive, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dump every raw timing sample as CSV.
    #[arg(long)]
    pub samples_out: Option<PathBuf>,
    /// Exit with status 2 if any median fails to decrease with qubit count.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct PqcDemoArgs {
    /// mlkem-512/768/1024, mldsa-44/65/87 or slhdsa-<set>, e.g. slhdsa-shake-128f.
    #[arg(long, value_parser = parse_algorithm)]
    pub algorithm: PqcAlgorithm,
    #[arg(long, value_parser = parse_operation)]
    pub operation: Operation,
    #[arg(long, value_parser = parse_recipe, default_value = "u")]
    pub recipe: GateRecipe,
    #[arg(long, value_parser = positive, default_value_t = 8)]
    pub qubits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "demo message")]
    pub message: String,
    #[arg(long, default_value = "")]
    pub ctx: String,
    /// Pre-hash signing with sha256, sha512, shake128 or shake256.
    #[arg(long, value_parser = parse_pre_hash)]
    pub prehash: Option<PreHash>,
    #[arg(long, value_enum, default_value_t = SlhMode::ThreeCalls)]
    pub slh_mode: SlhMode,
    /// Repeat the operation with a seeded host PRNG for comparison.
    #[arg(long)]
    pub baseline: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
