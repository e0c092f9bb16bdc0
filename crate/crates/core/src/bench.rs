//! Benchmark harness: the orbit-count scaling sweep and the named
//! constellation shells, with op counters and median wall times.
//!
//! Wall times are reported, never asserted. Every sweep point re-checks that
//! all three solvers agree on the distance array before a record is emitted.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::routing::{Algorithm, OpCounters, RoutingError, ShortestPathResult};
use crate::topology::{ConstellationGrid, GridSpec, NodeId, TopologyError, WeightModel};

/// Satellites per plane in the scaling sweep.
pub const SWEEP_SLOTS: usize = 18;
/// Plane counts in the scaling sweep.
pub const SWEEP_PLANES: std::ops::RangeInclusive<usize> = 3..=36;

/// `(label, planes, slots)` of the named constellation shells.
pub const TYPICAL_CONSTELLATIONS: [(&str, usize, usize); 4] = [
    ("oneweb", 18, 36),
    ("kuiper", 34, 34),
    ("starlink-a", 72, 22),
    ("starlink-b", 24, 66),
];

/// Absolute tolerance when comparing weighted distance arrays across solvers.
pub const WEIGHTED_DISTANCE_TOLERANCE: f64 = 1e-9;

/// CSV header, in field order.
pub const CSV_COLUMNS: [&str; 11] = [
    "label",
    "planes",
    "slots",
    "n",
    "algorithm",
    "repetitions",
    "median_ns",
    "min_search_comparisons",
    "relaxations",
    "frontier_peak",
    "measured_x",
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("repetitions must be >= 1")]
    NoRepetitions,
    #[error("no records to emit")]
    EmptyRecords,
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error(
        "{label}: {algorithm} disagrees with percolation at node {node} ({got} vs {expected})"
    )]
    SolverMismatch {
        label: String,
        algorithm: Algorithm,
        node: usize,
        got: f64,
        expected: f64,
    },
    #[error("{label}: {algorithm} counters changed between repetitions")]
    CounterDrift { label: String, algorithm: Algorithm },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub label: String,
    pub planes: usize,
    pub slots: usize,
    pub n: usize,
    pub algorithm: Algorithm,
    pub repetitions: usize,
    pub median_ns: u64,
    pub min_search_comparisons: u64,
    pub relaxations: u64,
    pub frontier_peak: u64,
    pub measured_x: f64,
}

impl BenchRecord {
    pub fn total_ops(&self) -> u64 {
        self.min_search_comparisons + self.relaxations
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum BenchWeights {
    #[default]
    Unit,
    /// Seeded uniform weights in `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    pub repetitions: usize,
    /// Seeds the weight generator when `weights` is not `Unit`.
    pub seed: u64,
    pub weights: BenchWeights,
}

impl BenchOptions {
    pub fn new(repetitions: usize, seed: u64) -> Self {
        BenchOptions {
            repetitions,
            seed,
            weights: BenchWeights::Unit,
        }
    }

    fn spec(&self, planes: usize, slots: usize) -> GridSpec {
        let weights = match self.weights {
            BenchWeights::Unit => WeightModel::Unit,
            BenchWeights::Uniform { lo, hi } => WeightModel::Uniform {
                lo,
                hi,
                seed: self.seed,
            },
        };
        GridSpec::torus(planes, slots).with_weights(weights)
    }
}

/// `P x 18` full tori for every `P` in `3..=36`, all three solvers, source 0.
/// Records are ordered by `P`, then by algorithm.
pub fn run_scaling_sweep(options: &BenchOptions) -> Result<Vec<BenchRecord>, BenchError> {
    let points: Vec<(String, usize, usize)> = SWEEP_PLANES
        .map(|p| (format!("{p}x{SWEEP_SLOTS}"), p, SWEEP_SLOTS))
        .collect();
    run_points(&points, options)
}

/// The four named constellation shells as full tori.
pub fn run_typical_constellations(options: &BenchOptions) -> Result<Vec<BenchRecord>, BenchError> {
    let points: Vec<(String, usize, usize)> = TYPICAL_CONSTELLATIONS
        .iter()
        .map(|&(label, p, s)| (label.to_string(), p, s))
        .collect();
    run_points(&points, options)
}

fn run_points(
    points: &[(String, usize, usize)],
    options: &BenchOptions,
) -> Result<Vec<BenchRecord>, BenchError> {
    if options.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    // Grid construction is parallel; timed sections below run one at a time.
    let grids: Vec<ConstellationGrid> = points
        .par_iter()
        .map(|(_, p, s)| ConstellationGrid::build(options.spec(*p, *s)))
        .collect::<Result<_, _>>()?;

    let mut records = Vec::with_capacity(points.len() * Algorithm::ALL.len());
    for ((label, planes, slots), grid) in points.iter().zip(&grids) {
        let unit = matches!(options.weights, BenchWeights::Unit);
        let mut reference: Option<ShortestPathResult> = None;
        for algorithm in Algorithm::ALL {
            let (result, median_ns) = timed_runs(grid, algorithm, options.repetitions, label)?;
            match &reference {
                None => reference = Some(result.clone()),
                Some(expected) => check_agreement(label, expected, &result, unit)?,
            }
            records.push(record(
                label,
                *planes,
                *slots,
                options.repetitions,
                median_ns,
                &result,
            ));
        }
    }
    Ok(records)
}

fn timed_runs(
    grid: &ConstellationGrid,
    algorithm: Algorithm,
    repetitions: usize,
    label: &str,
) -> Result<(ShortestPathResult, u64), BenchError> {
    let source = NodeId::new(0);
    let mut times = Vec::with_capacity(repetitions);
    let mut first: Option<ShortestPathResult> = None;
    for _ in 0..repetitions {
        let start = Instant::now();
        let result = algorithm.run(grid, source)?;
        times.push(start.elapsed().as_nanos() as u64);
        match &first {
            None => first = Some(result),
            Some(prev) if prev.counters != result.counters => {
                return Err(BenchError::CounterDrift {
                    label: label.to_string(),
                    algorithm,
                })
            }
            Some(_) => {}
        }
    }
    times.sort_unstable();
    let result = first.expect("repetitions >= 1");
    Ok((result, median(&times)))
}

fn median(sorted: &[u64]) -> u64 {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        sorted[mid - 1] / 2 + sorted[mid] / 2 + (sorted[mid - 1] % 2 + sorted[mid] % 2) / 2
    }
}

fn check_agreement(
    label: &str,
    expected: &ShortestPathResult,
    got: &ShortestPathResult,
    exact: bool,
) -> Result<(), BenchError> {
    for (node, (&a, &b)) in got.distance.iter().zip(&expected.distance).enumerate() {
        let ok = if exact {
            a == b
        } else {
            (a - b).abs() <= WEIGHTED_DISTANCE_TOLERANCE
        };
        if !ok {
            return Err(BenchError::SolverMismatch {
                label: label.to_string(),
                algorithm: got.algorithm,
                node,
                got: a,
                expected: b,
            });
        }
    }
    Ok(())
}

fn record(
    label: &str,
    planes: usize,
    slots: usize,
    repetitions: usize,
    median_ns: u64,
    result: &ShortestPathResult,
) -> BenchRecord {
    let c: &OpCounters = &result.counters;
    BenchRecord {
        label: label.to_string(),
        planes,
        slots,
        n: planes * slots,
        algorithm: result.algorithm,
        repetitions,
        median_ns,
        min_search_comparisons: c.min_search_comparisons,
        relaxations: c.relaxations,
        frontier_peak: c.frontier_peak,
        measured_x: c.measured_x(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// `.json` selects JSON; anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (csv | json)")),
        }
    }
}

pub fn write_records<W: Write>(
    records: &[BenchRecord],
    format: OutputFormat,
    writer: W,
) -> Result<(), BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(writer);
            for r in records {
                w.serialize(r)?;
            }
            w.flush().map_err(csv::Error::from)?;
        }
        OutputFormat::Json => {
            let mut writer = writer;
            serde_json::to_writer_pretty(&mut writer, records)?;
            writeln!(writer).map_err(serde_json::Error::io)?;
        }
    }
    Ok(())
}

pub fn read_records<R: Read>(
    format: OutputFormat,
    reader: R,
) -> Result<Vec<BenchRecord>, BenchError> {
    match format {
        OutputFormat::Csv => csv::Reader::from_reader(reader)
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(BenchError::from),
        OutputFormat::Json => Ok(serde_json::from_reader(reader)?),
    }
}

/// Writes `records` to `destination`. Empty input is an error and leaves no
/// file behind.
pub fn emit_results(
    records: &[BenchRecord],
    format: OutputFormat,
    destination: &Path,
) -> Result<(), BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    let io_err = |source| BenchError::Io {
        path: destination.to_path_buf(),
        source,
    };
    let file = File::create(destination).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_records(records, format, &mut out)?;
    out.flush().map_err(io_err)
}

/// First node count at which percolation stops beating the heap solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Crossover {
    /// By `min_search_comparisons + relaxations`.
    pub by_ops: Option<usize>,
    /// By median wall time.
    pub by_wall_time: Option<usize>,
}

pub fn heap_crossover(records: &[BenchRecord]) -> Crossover {
    let mut pairs: Vec<(usize, &BenchRecord, &BenchRecord)> = Vec::new();
    for perc in records
        .iter()
        .filter(|r| r.algorithm == Algorithm::Percolation)
    {
        if let Some(heap) = records
            .iter()
            .find(|r| r.algorithm == Algorithm::Heap && r.label == perc.label)
        {
            pairs.push((perc.n, perc, heap));
        }
    }
    pairs.sort_by_key(|&(n, _, _)| n);
    Crossover {
        by_ops: pairs
            .iter()
            .find(|(_, p, h)| p.total_ops() > h.total_ops())
            .map(|&(n, _, _)| n),
        by_wall_time: pairs
            .iter()
            .find(|(_, p, h)| p.median_ns > h.median_ns)
            .map(|&(n, _, _)| n),
    }
}

/// Fixed-width table of the records plus the percolation/heap crossover.
/// Without `with_timing` the output depends only on op counters.
pub fn format_summary(records: &[BenchRecord], with_timing: bool) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{:<12} {:>6} {:<12} {:>12} {:>10} {:>9}",
        "label", "n", "algorithm", "ops", "peak", "x"
    );
    let _ = if with_timing {
        writeln!(out, " {:>12}", "median_ns")
    } else {
        writeln!(out)
    };
    for r in records {
        let _ = write!(
            out,
            "{:<12} {:>6} {:<12} {:>12} {:>10} {:>9.3}",
            r.label,
            r.n,
            r.algorithm.name(),
            r.total_ops(),
            r.frontier_peak,
            r.measured_x
        );
        let _ = if with_timing {
            writeln!(out, " {:>12}", r.median_ns)
        } else {
            writeln!(out)
        };
    }
    let c = heap_crossover(records);
    let show = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |n| n.to_string());
    let _ = write!(
        out,
        "percolation/heap crossover: ops at n={}",
        show(c.by_ops)
    );
    let _ = if with_timing {
        writeln!(out, ", wall time at n={}", show(c.by_wall_time))
    } else {
        writeln!(out)
    };
    out
}
