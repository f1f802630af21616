//! Argument grammar and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypcover_core::bounds::BoundConstants;
use hypcover_core::family::ConstraintMode;
use serde::Serialize;

use crate::commands::{self, BoundsParams, FamilyParams, NerveParams, Outcome};
use crate::error::CliError;
use crate::output::{write_outputs, Sidecar, SIDECAR_SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "hypcover",
    version,
    about = "Reproducible experiments on free-group covers and hyperbolic ball covers",
    long_about = "Reproducible experiments on free-group covers and hyperbolic ball covers.\n\n\
        Each subcommand writes <name>.csv (header row, reals with 12 significant \
        digits) and <name>.json (schema_version, command, params, seed, version, \
        duration_ms, outputs, summary) into --out-dir.\n\n\
        Exit status: 0 success, 1 invalid arguments, 2 a checked invariant failed."
)]
pub struct Cli {
    /// Directory for the CSV tables and JSON sidecar.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Suppress the human-readable report on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count index-r subgroups of F₂ two ways: the Hall recurrence and
    /// brute-force classes of transitive permutation pairs.
    #[command(after_help = CENSUS_HELP)]
    Census(CensusArgs),
    /// Describe the doubling family S of degree r and its coset
    /// representative words.
    #[command(after_help = FAMILY_HELP)]
    Family(FamilyArgs),
    /// Schreier-graph diameters of sampled family members over a grid of r.
    #[command(after_help = SCAN_HELP)]
    DiameterScan(ScanArgs),
    /// Diameters of random 2k-regular covers of the k-petal bouquet.
    #[command(after_help = RANDOM_GRAPH_HELP)]
    RandomGraph(RandomGraphArgs),
    /// Evaluate the counting bounds in log space.
    #[command(after_help = BOUNDS_HELP)]
    Bounds(BoundsArgs),
    /// Greedy net and nerve of a random point cloud in a hyperbolic (or
    /// Euclidean) ball.
    #[command(after_help = NERVE_HELP)]
    Nerve(NerveArgs),
}

const CENSUS_HELP: &str = "\
Output census.csv, one row per r:
  r                          subgroup index
  hall_count                 Hall recurrence value a_r
  classes                    equivalence classes of transitive pairs found by enumeration
  transitive_pairs           transitive pairs found by enumeration
  expected_transitive_pairs  a_r·(r−1)!
  oracle_match               true when both counts agree and every class has (r−1)! members";

const FAMILY_HELP: &str = "\
Output family.csv, two rows per i < r/2 (cosets 2i and 2i+1):
  coset         target coset
  i             binary-expansion index
  word          representative word; a, b are σ₁, σ₂ and A, B their inverses
  length        word length
  length_bound  3(1+log₂ i); empty for i = 0
  valid         word reaches the coset for every member of S within the bound
With --budget, family-members.csv:
  index         position in enumeration (lexicographic) or sampling order
  sigma2        images of 0..r−1 under σ₂, space separated";

const SCAN_HELP: &str = "\
Output diameter-scan.csv, one row per sampled member:
  r               degree
  sample          sample index
  diameter        Schreier-graph diameter
  exact           false when the diameter is a certified lower bound only
  max_rep_length  longest even-coset representative word
  diameter_cap    2·(max_rep_length + 1)
  ratio           diameter / log₂ r";

const RANDOM_GRAPH_HELP: &str = "\
Output random-graph.csv, one row per n:
  n                   vertices
  k                   petals (graph degree 2k)
  trials              graphs drawn
  connected           connected graphs among them
  connected_fraction  connected / trials
  diameter_min        smallest diameter (connected graphs only)
  diameter_median     median diameter
  diameter_max        largest diameter
  moore_bound         Moore lower bound for n vertices of degree 2k
  median_ratio        diameter_median / log₂ n
  exact               every diameter computed exactly
  regular             every vertex has 2k edge endpoints";

const BOUNDS_HELP: &str = "\
Output bounds.csv, one row per quantity:
  quantity               name, one of those listed below
  value                  its value
Quantities:
  lnln_lower             a·d
  ln_upper               b·d·e^{(n−1)d}, or b·d·e^{5d} when n = 3
  lnln_upper             ln(ln_upper)
  injectivity_floor      ε = e^{−d/c}
  ln_net_size            ln(vol B(d) / vol B(ε/4)) in ℍ³
  degree_bound_at_floor  vol B(9ε/8) / vol B(ε/8) in ℍ³
  ln_graph_count         k·s·ln s with s the net size
  ln_two_skeleton_count  k·s·ln s + s·k²·ln 2
  ln_volume_cap          ln c1 + (n−1)d
  ln_net_cap             ln c2 + 5d
  lnln_graph_cap         ln c3 + ln d + 5d
  lnln_two_skeleton_cap  ln c4 + ln d + 5d
The constants are conventions, not known values; the sidecar lists the ones left at their defaults.";

const NERVE_HELP: &str = "\
Output nerve.csv, a single row:
  geometry      hyperbolic or euclidean
  dimension     ambient dimension
  points        cloud size
  ball_radius   radius of the sampling ball
  radius        nerve edge threshold r (edges at distance < r)
  separation    net separation r/4
  net_size      s, points kept by the greedy net
  edges         nerve edges
  triangles     3-cliques of the edge graph
  max_degree    Δ, largest vertex degree
  degree_bound  packing bound: vol B(9r/8)/vol B(r/8), or 9^n when Euclidean
  triangle_cap  s·Δ²
  separated     net points pairwise at least r/4 apart
  maximal       every cloud point within r/4 of the net";

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    /// Largest subgroup index (at most 7).
    #[arg(long)]
    pub max_index: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// σ₂(i) = 2i for every 0 < i < r/2; |S| = (⌊r/2⌋+1)!.
    AllBelowHalf,
    /// σ₂(i) = 2i for even 0 < i < r/2 only.
    EvenOnly,
}

impl From<ModeArg> for ConstraintMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AllBelowHalf => ConstraintMode::AllBelowHalf,
            ModeArg::EvenOnly => ConstraintMode::EvenOnly,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct FamilyArgs {
    /// Degree r (at least 5).
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "all-below-half")]
    pub mode: ModeArg,
    /// Check every representative against the whole family; exit 2 on failure.
    #[arg(long)]
    pub verify_reps: bool,
    /// List members: all of them if |S| ≤ B, else B seeded samples.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Required when sampling.
    #[arg(long, requires = "budget")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    /// Comma-separated degrees, e.g. 16,32,64.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r_grid: Vec<usize>,
    /// Members sampled per degree.
    #[arg(long)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "all-below-half")]
    pub mode: ModeArg,
}

#[derive(Debug, Args, Serialize)]
pub struct RandomGraphArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_grid: Vec<usize>,
    /// Petals; the graph has degree 2k (at least 5).
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// Dimension (at least 3).
    #[arg(long)]
    pub n: u32,
    /// Diameter bound.
    #[arg(long)]
    pub d: f64,
    /// Lower-bound rate [default: 1].
    #[arg(long)]
    pub a: Option<f64>,
    /// Upper-bound rate [default: 1].
    #[arg(long)]
    pub b: Option<f64>,
    /// Injectivity constant: radius ≥ e^{−d/c} [default: 3].
    #[arg(long)]
    pub c: Option<f64>,
    /// Nerve degree bound [default: 729].
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    #[arg(long)]
    pub c3: Option<f64>,
    #[arg(long)]
    pub c4: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct NerveArgs {
    /// Cloud size.
    #[arg(long)]
    pub points: usize,
    /// Nerve edge threshold r; the net uses separation r/4.
    #[arg(long)]
    pub radius: f64,
    #[arg(long)]
    pub seed: u64,
    /// Sample from a Euclidean ball instead of ℍ³.
    #[arg(long)]
    pub euclidean: bool,
    /// Radius of the sampling ball.
    #[arg(long, default_value_t = 2.0)]
    pub ball_radius: f64,
    /// Ambient dimension (hyperbolic clouds need 3).
    #[arg(long, default_value_t = 3)]
    pub dimension: usize,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Census(_) => "census",
            Command::Family(_) => "family",
            Command::DiameterScan(_) => "diameter-scan",
            Command::RandomGraph(_) => "random-graph",
            Command::Bounds(_) => "bounds",
            Command::Nerve(_) => "nerve",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Census(_) | Command::Bounds(_) => None,
            Command::Family(a) => a.seed,
            Command::DiameterScan(a) => Some(a.seed),
            Command::RandomGraph(a) => Some(a.seed),
            Command::Nerve(a) => Some(a.seed),
        }
    }

    fn params(&self) -> Result<serde_json::Value, CliError> {
        Ok(match self {
            Command::Census(a) => serde_json::to_value(a)?,
            Command::Family(a) => serde_json::to_value(a)?,
            Command::DiameterScan(a) => serde_json::to_value(a)?,
            Command::RandomGraph(a) => serde_json::to_value(a)?,
            Command::Bounds(a) => serde_json::to_value(a)?,
            Command::Nerve(a) => serde_json::to_value(a)?,
        })
    }

    pub fn execute(&self) -> Result<Outcome, CliError> {
        match self {
            Command::Census(a) => commands::census(a.max_index),
            Command::Family(a) => commands::family(&FamilyParams {
                r: a.r,
                mode: a.mode.into(),
                verify_reps: a.verify_reps,
                budget: a.budget,
                seed: a.seed,
            }),
            Command::DiameterScan(a) => {
                commands::diameter_scan(&a.r_grid, a.samples, a.seed, a.mode.into())
            }
            Command::RandomGraph(a) => commands::random_graph(&a.n_grid, a.k, a.trials, a.seed),
            Command::Bounds(a) => commands::bounds(&bounds_params(a)),
            Command::Nerve(a) => commands::nerve(&NerveParams {
                points: a.points,
                radius: a.radius,
                seed: a.seed,
                euclidean: a.euclidean,
                ball_radius: a.ball_radius,
                dimension: a.dimension,
            }),
        }
    }
}

fn bounds_params(a: &BoundsArgs) -> BoundsParams {
    let mut consts = BoundConstants::new(a.n, a.d);
    let mut defaulted = Vec::new();
    let slots: [(&'static str, Option<f64>, &mut f64); 8] = [
        ("a", a.a, &mut consts.a),
        ("b", a.b, &mut consts.b),
        ("c", a.c, &mut consts.c),
        ("k", a.k, &mut consts.k),
        ("c1", a.c1, &mut consts.c1),
        ("c2", a.c2, &mut consts.c2),
        ("c3", a.c3, &mut consts.c3),
        ("c4", a.c4, &mut consts.c4),
    ];
    for (name, given, slot) in slots {
        match given {
            Some(v) => *slot = v,
            None => defaulted.push(name),
        }
    }
    BoundsParams { consts, defaulted }
}

/// Parses `args` (program name first), runs the subcommand, writes its
/// outputs and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "hypcover {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let outcome = cli.command.execute()?;
    let duration_ms = start.elapsed().as_secs_f64() * 1e3;
    let sidecar = Sidecar {
        schema_version: SIDECAR_SCHEMA_VERSION,
        command: cli.command.name().to_string(),
        params: cli.command.params()?,
        seed: cli.command.seed(),
        version: env!("CARGO_PKG_VERSION"),
        duration_ms,
        outputs: outcome.tables.iter().map(|t| t.file_name()).collect(),
        summary: outcome.summary.clone(),
    };
    let written = write_outputs(&cli.out_dir, &outcome.tables, &sidecar)?;
    if !cli.quiet {
        for line in &outcome.report {
            writeln!(stdout, "{line}")?;
        }
        for path in &written {
            writeln!(stdout, "wrote {}", path.display())?;
        }
    }
    match outcome.violation {
        Some(msg) => Err(CliError::Invariant(msg)),
        None => Ok(()),
    }
}
