//! Single-source shortest-path solvers over a [`ConstellationGrid`].
//!
//! Three solvers share one result contract:
//!
//! - [`percolation_dijkstra`]: expands each settled node to its (at most four)
//!   grid neighbours and selects the next node by a linear scan over the
//!   frontier array.
//! - [`dijkstra_naive`]: adjacency-matrix style Dijkstra, scanning all `N`
//!   nodes for the minimum and all `N` nodes for relaxation.
//! - [`dijkstra_heap`]: lazy-deletion binary-heap Dijkstra.
//!
//! All of them fill an [`OpCounters`] with plain increments, so operation
//! counts can be compared directly across solvers.

mod frontier;
mod heap;
mod naive;
mod path;
mod percolation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{ConstellationGrid, NodeId, TopologyError};

pub use frontier::Frontier;
pub use heap::dijkstra_heap;
pub use naive::dijkstra_naive;
pub use path::{extract_path, path_length};
pub use percolation::{
    dynamic_min_search, percolate, percolation_dijkstra, percolation_dijkstra_observed, SsspState,
};

/// Distance of an undiscovered node. Never used as an addend.
pub const INF: f64 = f64::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RoutingError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("node {target} is unreachable from {from}")]
    Unreachable { from: NodeId, target: NodeId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Percolation,
    Naive,
    Heap,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Percolation, Algorithm::Naive, Algorithm::Heap];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Percolation => "percolation",
            Algorithm::Naive => "naive",
            Algorithm::Heap => "heap",
        }
    }

    pub fn run(
        self,
        grid: &ConstellationGrid,
        source: NodeId,
    ) -> Result<ShortestPathResult, RoutingError> {
        match self {
            Algorithm::Percolation => percolation_dijkstra(grid, source),
            Algorithm::Naive => dijkstra_naive(grid, source),
            Algorithm::Heap => dijkstra_heap(grid, source),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?} (percolation | naive | heap)"))
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Operation counts for one run.
///
/// `min_search_comparisons` is the cost of selecting the next node: frontier
/// entries scanned (percolation), nodes scanned (naive), or key comparisons
/// inside the heap (heap). `relaxations` counts neighbour edges examined.
/// `frontier_scan_total / extractions` is the average selection cost.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounters {
    pub min_search_comparisons: u64,
    pub relaxations: u64,
    pub frontier_peak: u64,
    pub frontier_scan_total: u64,
    /// Settled nodes, the source included.
    pub extractions: u64,
    pub heap_pushes: u64,
}

impl OpCounters {
    pub fn total_ops(&self) -> u64 {
        self.min_search_comparisons + self.relaxations
    }

    /// Average selection cost per settled node.
    pub fn measured_x(&self) -> f64 {
        if self.extractions == 0 {
            0.0
        } else {
            self.frontier_scan_total as f64 / self.extractions as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathResult {
    pub algorithm: Algorithm,
    pub source: NodeId,
    pub distance: Vec<f64>,
    pub predecessor: Vec<Option<NodeId>>,
    pub counters: OpCounters,
}

impl ShortestPathResult {
    pub fn node_count(&self) -> usize {
        self.distance.len()
    }

    pub fn distance_to(&self, target: NodeId) -> Option<f64> {
        self.distance
            .get(target.index())
            .copied()
            .filter(|&d| d != INF)
    }

    pub fn max_distance(&self) -> f64 {
        self.distance
            .iter()
            .copied()
            .filter(|&d| d != INF)
            .fold(0.0, f64::max)
    }
}
