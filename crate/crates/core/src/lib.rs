//! Routing for torus-grid satellite constellation backbones.
//!
//! [`topology`] builds `planes x slots` tori with up to four links per
//! satellite. [`routing`] holds the percolation solver, which scans a compact
//! frontier array instead of a priority queue, next to naive and binary-heap
//! Dijkstra. [`analysis`] relates the solvers' operation counters to the
//! `(4 + X) * N` versus `2 * N^2` cost model, and [`bench`] runs the scaling
//! sweep and named-constellation benchmarks.

pub mod analysis;
pub mod bench;
pub mod cli;
pub mod routing;
pub mod topology;

pub use routing::{
    dijkstra_heap, dijkstra_naive, extract_path, percolation_dijkstra, Algorithm, OpCounters,
    ShortestPathResult,
};
pub use topology::{ConstellationGrid, GridSpec, NodeId, SeamPolicy, WeightModel};
