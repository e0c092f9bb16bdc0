//! `perc-route` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 1 for runtime
//! failures. Every failure prints exactly one `error: ...` line on stderr.
//! Functional output goes to stdout and is byte-stable; wall times only ever
//! go to stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{estimate_x, predicted_vs_measured, AnalysisError, XEstimate};
use crate::bench::{
    emit_results, format_summary, run_scaling_sweep, run_typical_constellations, BenchError,
    BenchOptions, BenchRecord, BenchWeights, OutputFormat,
};
use crate::routing::{extract_path, Algorithm, RoutingError};
use crate::topology::{
    ConstellationGrid, GridSpec, NodeId, SeamPolicy, TopologyError, WeightModel,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "perc-route",
    version,
    about = "Shortest-path routing on torus-grid constellation backbones"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Route from one satellite to another (or to all).
    Route(RouteArgs),
    /// Run the scaling sweep or the named-constellation benchmark.
    Bench(BenchArgs),
    /// Monte Carlo estimate of the average frontier scan length.
    EstimateX(EstimateArgs),
    /// Dump a grid as JSON adjacency.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightKind {
    Unit,
    Uniform,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Orbital planes (>= 3).
    #[arg(long)]
    pub planes: Option<usize>,
    /// Satellites per plane (>= 3).
    #[arg(long)]
    pub slots: Option<usize>,
    /// Drop the inter-plane links between the last and first plane.
    #[arg(long)]
    pub seam: bool,
    #[arg(long, value_enum, default_value = "unit")]
    pub weights: WeightKind,
    #[arg(long, default_value_t = 1.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    /// Seed for uniform weights.
    #[arg(long, default_value_t = 0)]
    pub weight_seed: u64,
    /// Grid config file (JSON or key=value); overrides the flags above.
    #[arg(long, value_name = "PATH")]
    pub grid_config: Option<PathBuf>,
}

impl GridArgs {
    pub fn to_spec(&self) -> Result<GridSpec, CliError> {
        if let Some(path) = &self.grid_config {
            return GridSpec::from_config_file(path).map_err(CliError::usage);
        }
        let planes = self
            .planes
            .ok_or_else(|| CliError::Usage("--planes is required".into()))?;
        let slots = self
            .slots
            .ok_or_else(|| CliError::Usage("--slots is required".into()))?;
        let weights = match self.weights {
            WeightKind::Unit => WeightModel::Unit,
            WeightKind::Uniform => WeightModel::Uniform {
                lo: self.lo,
                hi: self.hi,
                seed: self.weight_seed,
            },
        };
        let seam = if self.seam {
            SeamPolicy::Seam
        } else {
            SeamPolicy::FullTorus
        };
        let spec = GridSpec::torus(planes, slots)
            .with_seam(seam)
            .with_weights(weights);
        spec.validate().map_err(CliError::usage)?;
        Ok(spec)
    }
}

/// A node given as a flat id (`41`) or as `plane,slot` (`2,5`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRef {
    Id(usize),
    Coords(usize, usize),
}

impl std::str::FromStr for NodeRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid node {s:?} (use an id or plane,slot)");
        match s.split_once(',') {
            Some((p, q)) => Ok(NodeRef::Coords(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            )),
            None => s.trim().parse().map(NodeRef::Id).map_err(|_| bad()),
        }
    }
}

impl NodeRef {
    pub fn resolve(self, grid: &ConstellationGrid) -> Result<NodeId, TopologyError> {
        match self {
            NodeRef::Id(i) => {
                let node = NodeId::new(i);
                grid.check_node(node)?;
                Ok(node)
            }
            NodeRef::Coords(p, s) => grid.node_id(p, s),
        }
    }
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value = "0,0")]
    pub from: NodeRef,
    #[arg(long)]
    pub to: Option<NodeRef>,
    #[arg(long, default_value = "percolation")]
    pub algorithm: Algorithm,
    /// Print the solver's wall time on stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// 3..=36 planes of 18 satellites.
    #[arg(long, conflicts_with = "typical", required_unless_present = "typical")]
    pub sweep: bool,
    /// OneWeb, Kuiper, Starlink-a and Starlink-b shells.
    #[arg(long)]
    pub typical: bool,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    /// Output format; inferred from the extension when omitted.
    #[arg(long)]
    pub format: Option<OutputFormat>,
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "unit")]
    pub weights: WeightKind,
    #[arg(long, default_value_t = 1.0)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    /// Write median_ns as 0 so the file is byte-stable across runs.
    #[arg(long)]
    pub stable: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Seed for source selection.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Write to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(e)
    }
}

impl From<RoutingError> for CliError {
    fn from(e: RoutingError) -> Self {
        match e {
            RoutingError::Topology(t) => CliError::usage(t),
            other => CliError::runtime(other),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Routing(r) => r.into(),
            other => CliError::usage(other),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::NoRepetitions | BenchError::Topology(_) => CliError::usage(e),
            other => CliError::runtime(other),
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "error: {}", line.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn execute(
    command: &Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Route(args) => cmd_route(args, out, err),
        Command::Bench(args) => cmd_bench(args, out, err),
        Command::EstimateX(args) => cmd_estimate_x(args, out),
        Command::Generate(args) => cmd_generate(args, out),
    }
}

fn fmt_node(grid: &ConstellationGrid, node: NodeId) -> String {
    let (p, s) = grid.coords(node).expect("resolved node");
    format!("({p},{s})")
}

pub fn cmd_route(
    args: &RouteArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let grid = ConstellationGrid::build(args.grid.to_spec()?).map_err(CliError::usage)?;
    let source = args.from.resolve(&grid).map_err(CliError::usage)?;
    let target = args
        .to
        .map(|t| t.resolve(&grid))
        .transpose()
        .map_err(CliError::usage)?;

    let start = Instant::now();
    let result = args.algorithm.run(&grid, source)?;
    let elapsed = start.elapsed();

    writeln!(out, "algorithm: {}", args.algorithm)?;
    writeln!(
        out,
        "grid: {}x{} n={}",
        grid.planes(),
        grid.slots(),
        grid.node_count()
    )?;
    writeln!(out, "source: {} {}", source, fmt_node(&grid, source))?;
    match target {
        Some(target) => {
            let path = extract_path(&result, target)?;
            writeln!(out, "target: {} {}", target, fmt_node(&grid, target))?;
            writeln!(out, "distance: {}", result.distance[target.index()])?;
            writeln!(out, "hops: {}", path.len() - 1)?;
            let hops: Vec<String> = path.iter().map(|&n| fmt_node(&grid, n)).collect();
            writeln!(out, "path: {}", hops.join(" -> "))?;
        }
        None => {
            writeln!(out, "max_distance: {}", result.max_distance())?;
        }
    }
    let c = &result.counters;
    let cmp = predicted_vs_measured(&result);
    writeln!(out, "min_search_comparisons: {}", c.min_search_comparisons)?;
    writeln!(out, "relaxations: {}", c.relaxations)?;
    writeln!(out, "frontier_peak: {}", c.frontier_peak)?;
    writeln!(out, "extractions: {}", c.extractions)?;
    writeln!(out, "measured_x: {:.6}", c.measured_x())?;
    writeln!(out, "predicted_ops: {:.1}", cmp.predicted_proposed_ops)?;
    writeln!(out, "naive_ops: {:.1}", cmp.predicted_dijkstra_ops)?;
    if args.timing {
        writeln!(err, "elapsed_ns: {}", elapsed.as_nanos())?;
    }
    Ok(())
}

pub fn cmd_bench(
    args: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let weights = match args.weights {
        WeightKind::Unit => BenchWeights::Unit,
        WeightKind::Uniform => BenchWeights::Uniform {
            lo: args.lo,
            hi: args.hi,
        },
    };
    let options = BenchOptions {
        repetitions: args.repetitions,
        seed: args.seed,
        weights,
    };
    let mut records: Vec<BenchRecord> = if args.sweep {
        run_scaling_sweep(&options)?
    } else {
        run_typical_constellations(&options)?
    };

    // Timing goes to stderr before it is possibly blanked for the file.
    write!(err, "{}", format_summary(&records, true))?;
    if args.stable {
        records.iter_mut().for_each(|r| r.median_ns = 0);
    }
    let format = args
        .format
        .unwrap_or_else(|| OutputFormat::from_path(&args.out));
    emit_results(&records, format, &args.out)?;
    write!(out, "{}", format_summary(&records, false))?;
    writeln!(
        out,
        "wrote {} records to {}",
        records.len(),
        args.out.display()
    )?;
    Ok(())
}

pub fn cmd_estimate_x(args: &EstimateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = args.grid.to_spec()?;
    let est: XEstimate = estimate_x(&spec, args.trials, args.seed)?;
    writeln!(out, "grid: {}x{} n={}", spec.planes, spec.slots, est.n)?;
    writeln!(out, "trials: {}", est.trials)?;
    writeln!(out, "seed: {}", est.seed)?;
    writeln!(out, "mean_x: {:.6}", est.mean_x)?;
    writeln!(out, "std_x: {:.6}", est.std_x)?;
    writeln!(out, "ratio_to_n: {:.6}", est.ratio_to_n)?;
    writeln!(
        out,
        "reference_ratio: {:.6} (1/7.5)",
        XEstimate::reference_ratio()
    )?;
    Ok(())
}

#[derive(Serialize)]
struct AdjacencyDump {
    planes: usize,
    slots: usize,
    seam: SeamPolicy,
    n: usize,
    edges: usize,
    nodes: Vec<NodeDump>,
}

#[derive(Serialize)]
struct NodeDump {
    id: NodeId,
    plane: usize,
    slot: usize,
    neighbors: Vec<NeighborDump>,
}

#[derive(Serialize)]
struct NeighborDump {
    id: NodeId,
    weight: f64,
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = args.grid.to_spec()?;
    let grid = ConstellationGrid::build(spec).map_err(CliError::usage)?;
    let dump = AdjacencyDump {
        planes: grid.planes(),
        slots: grid.slots(),
        seam: grid.spec().seam,
        n: grid.node_count(),
        edges: grid.edge_count(),
        nodes: grid
            .nodes()
            .map(|id| {
                let (plane, slot) = grid.coords(id).expect("in range");
                NodeDump {
                    id,
                    plane,
                    slot,
                    neighbors: grid
                        .neighbors(id)
                        .map(|(id, weight)| NeighborDump { id, weight })
                        .collect(),
                }
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&dump).map_err(CliError::runtime)?;
    match &args.out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?,
        None => writeln!(out, "{json}")?,
    }
    Ok(())
}
