//! `cubeforge` — command-line access to the sumset, progression, coloring,
//! and Sidon-growth computations, with reproducible machine-readable output.
//!
//! Every run writes its primary output (JSON by default, CSV with
//! `--format csv`) to standard output and a one-line run manifest — the
//! subcommand, full argument vector, resolved seed, generator id, version,
//! node budget, and wall time — to standard error (or to `--manifest
//! <path>`). Two runs with identical manifests modulo timing produce
//! byte-identical primary output.
//!
//! Exit codes: `0` success, `1` domain or input errors (and failed
//! verification suites), `2` exhausted budgets or caps, `3` usage errors.
//!
//! Randomized operations draw from a fixed documented seed by default;
//! `--seed auto` opts into entropy, and the chosen seed is always recorded
//! in the manifest.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cubeforge_core::budget::{Caps, SearchBudget};
use cubeforge_core::rng::{value_at, DEFAULT_SEED, PRNG_ALGORITHM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "cubeforge",
    version,
    about = "Restricted sumsets, arithmetic progressions, colorings, and Sidon growth",
    after_help = "Exit codes: 0 success, 1 domain error or failed verification, \
                  2 budget exhausted, 3 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Primary output format on stdout.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the run manifest to this file instead of standard error.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    /// Seed for randomized operations: an integer, or "auto" for entropy
    /// (the resolved value is recorded in the manifest either way).
    #[arg(long, global = true, default_value = "12648430", value_name = "N|auto")]
    seed: String,

    /// Worker threads for parallel scans (default: all cores). Results are
    /// thread-count-invariant.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Node budget for backtracking searches; overrides the
    /// CUBEFORGE_BUDGET environment variable.
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Restricted and iterated sumsets, chain witnesses, progression and
    /// Sidon structure of an integer set.
    Sumset(SumsetArgs),
    /// Generalized arithmetic progressions: enumeration, sign
    /// decomposition, containing progression, index collisions.
    Gap(GapArgs),
    /// Boxed lattice sets: iterated sumsets, stack and dyadic partitions,
    /// plane embedding, index walks, density-bound measurements.
    Grid(GridArgs),
    /// Colorings of [n]: construction, monochromatic-structure detection,
    /// products.
    Coloring(ColoringArgs),
    /// Least n forcing a monochromatic k-term progression under r colors,
    /// with two-sided certification.
    Vdw(RamseyArgs),
    /// Least n forcing a monochromatic affine k-cube under r colors, with
    /// two-sided certification.
    Hilbert(RamseyArgs),
    /// Count k-subsets of [n] whose restricted sumset has at most u
    /// elements, against the counting bound.
    Census(CensusArgs),
    /// Construct a Sidon set (prime-indexed formula or greedy sequence).
    Sidon(SidonArgs),
    /// Run the two-phase subset-sum growth pipeline on a Sidon set.
    SidonGrow(SidonGrowArgs),
    /// Probability that a random 2-coloring of [n] contains a
    /// monochromatic affine k-cube (exact or sampled).
    Montecarlo(MontecarloArgs),
    /// Run batch invariant suites and report pass/fail per suite
    /// (exit 1 if any fails).
    VerifyBounds(VerifyBoundsArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["set", "input"]))]
pub struct SumsetArgs {
    /// Inline set: integers separated by commas and/or whitespace.
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Read the set from a file (same format; `#` starts a comment).
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Sums of exactly ELL distinct elements instead of Σ*A.
    #[arg(long, conflicts_with_all = ["mfold", "m_restricted", "chain", "longest_ap", "sidon"])]
    pub ell: Option<usize>,
    /// M-fold sumset A + … + A (repetition across summands allowed).
    #[arg(long, conflicts_with_all = ["m_restricted", "chain", "longest_ap", "sidon"])]
    pub mfold: Option<u32>,
    /// M-fold iterated restricted sumset mΣ*A.
    #[arg(long = "m-restricted", conflicts_with_all = ["chain", "longest_ap", "sidon"])]
    pub m_restricted: Option<u32>,
    /// Increasing chain of subset sums witnessing |Σ*A| ≥ C(|A|+1,2)+1.
    #[arg(long, conflicts_with_all = ["longest_ap", "sidon"])]
    pub chain: bool,
    /// Longest arithmetic progression contained in the set.
    #[arg(long = "longest-ap", conflicts_with = "sidon")]
    pub longest_ap: bool,
    /// Check the Sidon property (all pairwise sums distinct).
    #[arg(long)]
    pub sidon: bool,
}

#[derive(Args)]
pub struct GapArgs {
    /// Base value of the progression.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub base: i64,
    /// Differences d₁,d₂,… (comma-separated, nonzero).
    #[arg(long, allow_hyphen_values = true, required_unless_present = "collision")]
    pub diffs: Option<String>,
    /// Half-open index ranges (mᵢ, Mᵢ] as "lo..hi" per difference,
    /// comma-separated: e.g. "-2..2,-1..1".
    #[arg(long, allow_hyphen_values = true, required_unless_present = "collision")]
    pub ranges: Option<String>,
    /// Six-part sign decomposition (symmetric rank-2, proper on the closed
    /// index box).
    #[arg(long, conflicts_with_all = ["containing_ap", "collision"])]
    pub decompose: bool,
    /// Shortest ordinary progression containing the set (symmetric rank-2).
    #[arg(long = "containing-ap", conflicts_with = "collision")]
    pub containing_ap: bool,
    /// Search for an index collision of x₁d₁ + x₂d₂: takes "d1,d2,m,n,k".
    #[arg(long, allow_hyphen_values = true, value_name = "SPEC")]
    pub collision: Option<String>,
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["points", "input"]))]
pub struct GridArgs {
    /// Inline points: coordinates comma-separated, points
    /// semicolon-separated, e.g. "1,1;1,2;2,1".
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// Read points from a file: one comma-separated point per line,
    /// `#` comments allowed.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Declare the box [1,N₁]×…×[1,N_d] as "N1,N2,…".
    #[arg(long = "box", value_name = "DIMS")]
    pub box_dims: Option<String>,
    /// Multiplicity m for the iterated restricted sumset (default 1).
    #[arg(long, default_value_t = 1)]
    pub mfold: u32,
    /// Partition into fibers over the leading coordinates and classify
    /// each as dense or sparse.
    #[arg(long, conflicts_with_all = ["dyadic", "flatten", "walk", "verify_dense"])]
    pub stacks: bool,
    /// Select the dyadic size class of dense fibers with maximum mass.
    #[arg(long, conflicts_with_all = ["flatten", "walk", "verify_dense"])]
    pub dyadic: bool,
    /// Embed the boxed set into the plane (rank-lowering, injective).
    #[arg(long, conflicts_with_all = ["walk", "verify_dense"])]
    pub flatten: bool,
    /// Replacement-walk witness on a one-dimensional even-size set.
    #[arg(long, conflicts_with = "verify_dense")]
    pub walk: bool,
    /// Measure |mΣ*A| against the polynomial bound shape.
    #[arg(long = "verify-dense")]
    pub verify_dense: bool,
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["random", "ap_free", "input"]))]
pub struct ColoringArgs {
    /// Seeded uniform coloring: "n,r" (uses the global --seed).
    #[arg(long, value_name = "N,R")]
    pub random: Option<String>,
    /// Search for a coloring of [n] avoiding monochromatic k-term
    /// progressions: "n,k,r".
    #[arg(long = "ap-free", value_name = "N,K,R")]
    pub ap_free: Option<String>,
    /// Read a digit-line coloring from a file.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Report the smallest monochromatic K-term progression.
    #[arg(long = "find-ap", value_name = "K", conflicts_with_all = ["find_cube", "product"])]
    pub find_ap: Option<u64>,
    /// Report the smallest monochromatic affine K-cube.
    #[arg(long = "find-cube", value_name = "K", conflicts_with = "product")]
    pub find_cube: Option<u64>,
    /// Generator sumset-size cap for the cube search.
    #[arg(long = "sumset-cap", requires = "find_cube")]
    pub sumset_cap: Option<u64>,
    /// Product with a second coloring given as a digit line.
    #[arg(long, value_name = "DIGITS")]
    pub product: Option<String>,
}

#[derive(Args)]
pub struct RamseyArgs {
    /// Progression length (vdw) or cube dimension (hilbert).
    #[arg(short, long)]
    pub k: u64,
    /// Number of colors.
    #[arg(short, long)]
    pub r: u32,
    /// Domain ceiling: only colorings of [1..nmax] are searched; results
    /// hitting the ceiling are reported lower-bound-only.
    #[arg(long)]
    pub nmax: u64,
    /// Compare the result against a baseline table (kind,k,r,value rows);
    /// drift is an error.
    #[arg(long, value_name = "PATH")]
    pub baseline: Option<PathBuf>,
    /// Record a newly certified exact value into the baseline table.
    #[arg(long, requires = "baseline")]
    pub record: bool,
}

#[derive(Args)]
pub struct CensusArgs {
    /// Ground set size: subsets are drawn from [n].
    #[arg(short, long)]
    pub n: u64,
    /// Subset size.
    #[arg(short, long)]
    pub k: u64,
    /// Sumset-size threshold: count subsets with |Σ*B| ≤ u.
    #[arg(short, long)]
    pub u: u64,
}

#[derive(Args)]
pub struct SidonArgs {
    /// Construction spec: "et:p=101" (prime-indexed) or "mc:n=50" (greedy).
    #[arg(long, value_name = "SPEC")]
    pub construct: String,
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["input", "construct"]))]
pub struct SidonGrowArgs {
    /// Read the ambient Sidon set from a file.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Construct the ambient set: "et:p=101" or "mc:n=50".
    #[arg(long, value_name = "SPEC")]
    pub construct: Option<String>,
    /// Also write the growth trace JSON to this file.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
}

#[derive(Args)]
pub struct MontecarloArgs {
    /// Domain size: colorings of [n].
    #[arg(short, long)]
    pub n: i64,
    /// Cube dimension.
    #[arg(short, long)]
    pub k: u64,
    /// Number of sampled colorings (default 10000; seeded by --seed).
    #[arg(long, conflicts_with = "exact")]
    pub trials: Option<u64>,
    /// Enumerate all 2ⁿ colorings instead of sampling.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args)]
pub struct VerifyBoundsArgs {
    /// Suite configuration JSON ({"suites": [...], "seed": N, "trials": N});
    /// omitted = every suite at defaults, empty file = no suites.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Everything a handler needs besides its own arguments.
pub struct Ctx {
    pub seed: u64,
    pub budget: SearchBudget,
    pub caps: Caps,
}

/// A handler's result: the JSON document, its CSV rendering, and the exit
/// code to use on success (nonzero only for failed verification suites).
pub struct CmdOutput {
    pub json: serde_json::Value,
    pub csv: String,
    pub exit: u8,
}

impl CmdOutput {
    pub fn new(json: serde_json::Value, csv: String) -> Self {
        CmdOutput { json, csv, exit: 0 }
    }
}

#[derive(Serialize)]
struct RunManifest {
    subcommand: &'static str,
    /// Full argument vector after the program name.
    argv: Vec<String>,
    seed: u64,
    prng: &'static str,
    version: &'static str,
    node_budget: u64,
    wall_ms: u128,
}

fn resolve_seed(spec: &str) -> Result<u64, String> {
    if spec == "auto" {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(DEFAULT_SEED);
        return Ok(value_at(nanos, 0));
    }
    spec.parse::<u64>()
        .map_err(|_| format!("--seed takes an unsigned integer or \"auto\", got {spec:?}"))
}

fn dispatch(command: &Command, ctx: &Ctx) -> (&'static str, cubeforge_core::Result<CmdOutput>) {
    match command {
        Command::Sumset(a) => ("sumset", commands::sumset(a, ctx)),
        Command::Gap(a) => ("gap", commands::gap(a, ctx)),
        Command::Grid(a) => ("grid", commands::grid(a, ctx)),
        Command::Coloring(a) => ("coloring", commands::coloring(a, ctx)),
        Command::Vdw(a) => ("vdw", commands::ramsey(cubeforge_core::ramsey::RamseyKind::Vdw, a, ctx)),
        Command::Hilbert(a) => (
            "hilbert",
            commands::ramsey(cubeforge_core::ramsey::RamseyKind::Hilbert, a, ctx),
        ),
        Command::Census(a) => ("census", commands::census(a, ctx)),
        Command::Sidon(a) => ("sidon", commands::sidon(a, ctx)),
        Command::SidonGrow(a) => ("sidon-grow", commands::sidon_grow(a, ctx)),
        Command::Montecarlo(a) => ("montecarlo", commands::montecarlo(a, ctx)),
        Command::VerifyBounds(a) => ("verify-bounds", commands::verify_bounds(a, ctx)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with a non-error status.
            let usage_error = e.use_stderr();
            let _ = e.print();
            return if usage_error {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let started = Instant::now();
    if let Some(threads) = cli.threads {
        // The global pool can only be initialized once; a secondary attempt
        // (e.g. in tests sharing a process) is not an error.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let seed = match resolve_seed(&cli.seed) {
        Ok(seed) => seed,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let node_limit = cli
        .budget
        .or_else(|| {
            std::env::var("CUBEFORGE_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| SearchBudget::default().node_limit);
    let ctx = Ctx {
        seed,
        budget: SearchBudget::new(node_limit),
        caps: Caps::default(),
    };

    let (subcommand, result) = dispatch(&cli.command, &ctx);
    let code = match result {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out.json)
                            .expect("output serialization cannot fail")
                    );
                }
                Format::Csv => print!("{}", out.csv),
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource_limit() {
                2
            } else {
                1
            }
        }
    };

    let manifest = RunManifest {
        subcommand,
        argv: std::env::args().skip(1).collect(),
        seed,
        prng: PRNG_ALGORITHM,
        version: env!("CARGO_PKG_VERSION"),
        node_budget: node_limit,
        wall_ms: started.elapsed().as_millis(),
    };
    let line = serde_json::to_string(&manifest).expect("manifest serialization cannot fail");
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, line + "\n") {
                eprintln!("error: cannot write manifest to {}: {e}", path.display());
            }
        }
        None => eprintln!("{line}"),
    }
    ExitCode::from(code)
}
