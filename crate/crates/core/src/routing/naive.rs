use crate::topology::{ConstellationGrid, NodeId};

use super::{Algorithm, OpCounters, RoutingError, ShortestPathResult, INF};

/// Textbook `O(N^2)` Dijkstra.
///
/// Each round scans all `N` nodes for the unsettled minimum, then probes all
/// `N` nodes for a link from the settled node, as with an adjacency matrix.
/// A full run costs `N^2` comparisons plus `N^2` relaxation probes.
pub fn dijkstra_naive(
    grid: &ConstellationGrid,
    source: NodeId,
) -> Result<ShortestPathResult, RoutingError> {
    grid.check_node(source)?;
    let n = grid.node_count();
    let mut distance = vec![INF; n];
    let mut visited = vec![false; n];
    let mut predecessor = vec![None; n];
    let mut counters = OpCounters::default();
    distance[source.index()] = 0.0;
    let mut open = 1u64;
    counters.frontier_peak = 1;

    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in 0..n {
            counters.min_search_comparisons += 1;
            if visited[v] || distance[v] == INF {
                continue;
            }
            // Strict `<` keeps the smallest id on ties.
            if best.is_none_or(|b| distance[v] < distance[b]) {
                best = Some(v);
            }
        }
        counters.frontier_scan_total += n as u64;
        let Some(u) = best else { break };
        visited[u] = true;
        open -= 1;
        counters.extractions += 1;

        let uid = NodeId::new(u);
        for v in 0..n {
            counters.relaxations += 1;
            if visited[v] {
                continue;
            }
            if let Some(w) = grid.weight_between(uid, NodeId::new(v)) {
                if distance[v] == INF {
                    open += 1;
                }
                let candidate = distance[u] + w;
                if candidate < distance[v] {
                    distance[v] = candidate;
                    predecessor[v] = Some(uid);
                }
            }
        }
        counters.frontier_peak = counters.frontier_peak.max(open);
    }

    Ok(ShortestPathResult {
        algorithm: Algorithm::Naive,
        source,
        distance,
        predecessor,
        counters,
    })
}
