use crate::topology::{ConstellationGrid, NodeId};

use super::{Algorithm, Frontier, OpCounters, RoutingError, ShortestPathResult, INF};

/// Mutable state of one percolation run.
#[derive(Debug, Clone)]
pub struct SsspState {
    pub distance: Vec<f64>,
    pub visited: Vec<bool>,
    pub predecessor: Vec<Option<NodeId>>,
    pub frontier: Frontier,
    pub counters: OpCounters,
}

impl SsspState {
    /// Fresh state with `source` settled at distance 0 and an empty frontier.
    pub fn new(node_count: usize, source: NodeId) -> Self {
        let mut state = SsspState {
            distance: vec![INF; node_count],
            visited: vec![false; node_count],
            predecessor: vec![None; node_count],
            frontier: Frontier::new(node_count),
            counters: OpCounters::default(),
        };
        state.distance[source.index()] = 0.0;
        state.visited[source.index()] = true;
        state.counters.extractions = 1;
        state
    }

    /// Checks the frontier invariants: duplicate-free, flags consistent, and
    /// no member already settled.
    pub fn check_frontier(&self) -> Result<(), String> {
        self.frontier.check_consistency()?;
        if let Some(v) = self.frontier.iter().find(|v| self.visited[v.index()]) {
            return Err(format!("settled node {v} is still in the frontier"));
        }
        Ok(())
    }

    fn into_result(self, source: NodeId) -> ShortestPathResult {
        ShortestPathResult {
            algorithm: Algorithm::Percolation,
            source,
            distance: self.distance,
            predecessor: self.predecessor,
            counters: self.counters,
        }
    }
}

/// Relaxes the links of the settled node `current` and adds every unsettled
/// neighbour to the frontier.
///
/// Every neighbour examined counts as one relaxation, settled ones included,
/// so a full-torus run performs exactly `4N`.
#[inline]
pub fn percolate(grid: &ConstellationGrid, current: NodeId, state: &mut SsspState) {
    let base = state.distance[current.index()];
    debug_assert!(state.visited[current.index()] && base != INF);
    for (v, w) in grid.neighbors(current) {
        state.counters.relaxations += 1;
        let vi = v.index();
        if state.visited[vi] {
            continue;
        }
        let candidate = base + w;
        if candidate < state.distance[vi] {
            state.distance[vi] = candidate;
            state.predecessor[vi] = Some(current);
        }
        state.frontier.insert(v);
    }
    let len = state.frontier.len() as u64;
    if len > state.counters.frontier_peak {
        state.counters.frontier_peak = len;
    }
}

/// Scans the frontier for its minimum-distance node, settles it, and removes
/// it from the frontier. Ties go to the smaller id. Returns `None` once the
/// frontier is empty.
#[inline]
pub fn dynamic_min_search(state: &mut SsspState) -> Option<NodeId> {
    let members = state.frontier.as_slice();
    let scanned = members.len() as u64;
    state.counters.min_search_comparisons += scanned;
    state.counters.frontier_scan_total += scanned;

    let mut best: Option<(usize, NodeId, f64)> = None;
    for (pos, &node) in members.iter().enumerate() {
        let d = state.distance[node.index()];
        match best {
            Some((_, id, min)) if d > min || (d == min && node > id) => {}
            _ => best = Some((pos, node, d)),
        }
    }

    let (pos, node, _) = best?;
    state.frontier.swap_remove_at(pos);
    state.visited[node.index()] = true;
    state.counters.extractions += 1;
    Some(node)
}

/// Percolation-Dijkstra from `source`.
pub fn percolation_dijkstra(
    grid: &ConstellationGrid,
    source: NodeId,
) -> Result<ShortestPathResult, RoutingError> {
    percolation_dijkstra_observed(grid, source, |_, _| {})
}

/// [`percolation_dijkstra`] that calls `observe(state, node)` right after each
/// node (the source included) is settled and before it is expanded.
pub fn percolation_dijkstra_observed<F>(
    grid: &ConstellationGrid,
    source: NodeId,
    mut observe: F,
) -> Result<ShortestPathResult, RoutingError>
where
    F: FnMut(&SsspState, NodeId),
{
    grid.check_node(source)?;
    let mut state = SsspState::new(grid.node_count(), source);
    let mut current = source;
    loop {
        observe(&state, current);
        percolate(grid, current, &mut state);
        match dynamic_min_search(&mut state) {
            Some(next) => current = next,
            None => break,
        }
    }
    Ok(state.into_result(source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::GridSpec;

    fn grid(p: usize, s: usize) -> ConstellationGrid {
        ConstellationGrid::build(GridSpec::torus(p, s)).unwrap()
    }

    #[test]
    fn first_expansion_fills_four_slots() {
        let g = grid(4, 4);
        let source = NodeId::new(0);
        let mut state = SsspState::new(g.node_count(), source);
        percolate(&g, source, &mut state);
        assert_eq!(state.frontier.len(), 4);
        for v in state.frontier.iter() {
            assert_eq!(state.distance[v.index()], 1.0);
            assert_eq!(state.predecessor[v.index()], Some(source));
        }
        assert_eq!(state.counters.relaxations, 4);
    }

    #[test]
    fn no_improvement_keeps_distance_and_does_not_duplicate() {
        let g = grid(4, 4);
        let mut state = SsspState::new(g.node_count(), NodeId::new(0));
        let a = g.node_id(1, 1).unwrap();
        // (1,1) is adjacent to (0,1); pretend it was already reached cheaply.
        state.distance[a.index()] = 0.5;
        state.frontier.insert(a);
        let via = g.node_id(0, 1).unwrap();
        state.distance[via.index()] = 1.0;
        state.visited[via.index()] = true;
        percolate(&g, via, &mut state);
        assert_eq!(state.distance[a.index()], 0.5);
        assert_eq!(state.predecessor[a.index()], None);
        assert_eq!(state.frontier.iter().filter(|&v| v == a).count(), 1);
        state.check_frontier().unwrap();
    }

    #[test]
    fn settled_neighbours_are_skipped() {
        let g = grid(4, 4);
        let source = NodeId::new(0);
        let mut state = SsspState::new(g.node_count(), source);
        percolate(&g, source, &mut state);
        let next = dynamic_min_search(&mut state).unwrap();
        percolate(&g, next, &mut state);
        assert!(!state.frontier.contains(source));
        assert_eq!(state.distance[source.index()], 0.0);
        assert_eq!(state.counters.relaxations, 8);
    }

    fn state_with(distances: &[(usize, f64)]) -> SsspState {
        let mut state = SsspState::new(10, NodeId::new(9));
        for &(node, d) in distances {
            state.distance[node] = d;
            state.frontier.insert(NodeId::new(node));
        }
        state
    }

    #[test]
    fn min_search_picks_smallest_distance() {
        let mut state = state_with(&[(1, 5.0), (2, 3.0), (3, 7.0)]);
        assert_eq!(dynamic_min_search(&mut state), Some(NodeId::new(2)));
        assert!(state.visited[2]);
        let mut rest: Vec<_> = state.frontier.iter().map(NodeId::index).collect();
        rest.sort();
        assert_eq!(rest, vec![1, 3]);
        assert_eq!(state.counters.min_search_comparisons, 3);
        assert_eq!(state.counters.frontier_scan_total, 3);
    }

    #[test]
    fn min_search_on_empty_frontier() {
        let mut state = state_with(&[]);
        assert_eq!(dynamic_min_search(&mut state), None);
        assert_eq!(state.counters.extractions, 1);
    }

    #[test]
    fn min_search_ties_go_to_smaller_id() {
        // Insert the larger id first so array order cannot decide.
        let mut state = state_with(&[(6, 4.0), (4, 4.0)]);
        assert_eq!(dynamic_min_search(&mut state), Some(NodeId::new(4)));
        assert_eq!(dynamic_min_search(&mut state), Some(NodeId::new(6)));
    }

    #[test]
    fn node_zero_is_a_valid_result() {
        let mut state = state_with(&[(0, 2.0), (5, 3.0)]);
        assert_eq!(dynamic_min_search(&mut state), Some(NodeId::new(0)));
    }

    #[test]
    fn three_by_three_distances() {
        let g = grid(3, 3);
        let r = percolation_dijkstra(&g, NodeId::new(0)).unwrap();
        assert_eq!(r.distance_to(g.node_id(1, 1).unwrap()), Some(2.0));
        assert_eq!(r.distance_to(g.node_id(2, 2).unwrap()), Some(2.0));
        assert_eq!(r.max_distance(), 2.0);
        assert_eq!(r.distance[0], 0.0);
        assert_eq!(r.predecessor[0], None);
        assert_eq!(r.counters.extractions, 9);
        assert_eq!(r.counters.relaxations, 36);
    }

    #[test]
    fn rejects_out_of_range_source() {
        let g = grid(3, 3);
        assert!(percolation_dijkstra(&g, NodeId::new(9)).is_err());
    }
}
