use crate::topology::{ConstellationGrid, NodeId};

use super::{Algorithm, OpCounters, RoutingError, ShortestPathResult, INF};

/// Binary min-heap of `(distance, node)` that counts key comparisons.
///
/// Keys order by distance, then by node id.
#[derive(Debug, Default)]
struct CountingHeap {
    items: Vec<(f64, NodeId)>,
    comparisons: u64,
}

impl CountingHeap {
    fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    fn less(&mut self, a: usize, b: usize) -> bool {
        self.comparisons += 1;
        let (da, na) = self.items[a];
        let (db, nb) = self.items[b];
        da < db || (da == db && na < nb)
    }

    fn push(&mut self, key: f64, node: NodeId) {
        self.items.push((key, node));
        let mut i = self.items.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.less(i, parent) {
                break;
            }
            self.items.swap(i, parent);
            i = parent;
        }
    }

    fn pop(&mut self) -> Option<(f64, NodeId)> {
        if self.items.is_empty() {
            return None;
        }
        let top = self.items.swap_remove(0);
        let len = self.items.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut smallest = i;
            if l < len && self.less(l, smallest) {
                smallest = l;
            }
            if r < len && self.less(r, smallest) {
                smallest = r;
            }
            if smallest == i {
                break;
            }
            self.items.swap(i, smallest);
            i = smallest;
        }
        Some(top)
    }
}

/// Lazy-deletion binary-heap Dijkstra.
///
/// An improved distance pushes a fresh entry; stale entries are discarded
/// when popped. `min_search_comparisons` counts heap key comparisons and
/// `heap_pushes` counts pushes.
pub fn dijkstra_heap(
    grid: &ConstellationGrid,
    source: NodeId,
) -> Result<ShortestPathResult, RoutingError> {
    grid.check_node(source)?;
    let n = grid.node_count();
    let mut distance = vec![INF; n];
    let mut visited = vec![false; n];
    let mut predecessor = vec![None; n];
    let mut counters = OpCounters::default();
    let mut heap = CountingHeap::default();

    distance[source.index()] = 0.0;
    heap.push(0.0, source);
    counters.heap_pushes = 1;
    counters.frontier_peak = 1;

    while let Some((d, u)) = heap.pop() {
        let ui = u.index();
        if visited[ui] || d > distance[ui] {
            continue;
        }
        visited[ui] = true;
        counters.extractions += 1;
        for (v, w) in grid.neighbors(u) {
            counters.relaxations += 1;
            let vi = v.index();
            if visited[vi] {
                continue;
            }
            let candidate = d + w;
            if candidate < distance[vi] {
                distance[vi] = candidate;
                predecessor[vi] = Some(u);
                heap.push(candidate, v);
                counters.heap_pushes += 1;
            }
        }
        counters.frontier_peak = counters.frontier_peak.max(heap.len() as u64);
    }

    counters.min_search_comparisons = heap.comparisons;
    counters.frontier_scan_total = heap.comparisons;
    Ok(ShortestPathResult {
        algorithm: Algorithm::Heap,
        source,
        distance,
        predecessor,
        counters,
    })
}
