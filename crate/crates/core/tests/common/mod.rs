//! Reference shortest-path oracles that share no code with the solvers.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::VecDeque;

use percolation_routing::{ConstellationGrid, GridSpec, NodeId, WeightModel};

/// All-pairs distances by Floyd-Warshall over the grid's edge list.
pub fn floyd_warshall(grid: &ConstellationGrid) -> Vec<Vec<f64>> {
    let n = grid.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for u in 0..n {
        d[u][u] = 0.0;
        for (v, w) in grid.neighbors(NodeId::new(u)) {
            if w < d[u][v.index()] {
                d[u][v.index()] = w;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Hop distances on a unit-weight full torus, by BFS over adjacency computed
/// here from coordinates.
pub fn torus_bfs(planes: usize, slots: usize, source: usize) -> Vec<u32> {
    let n = planes * slots;
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    while let Some(u) = queue.pop_front() {
        let (p, s) = (u / slots, u % slots);
        for v in [
            p * slots + (s + 1) % slots,
            p * slots + (s + slots - 1) % slots,
            ((p + 1) % planes) * slots + s,
            ((p + planes - 1) % planes) * slots + s,
        ] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Closed-form unit-torus distance: the sum of the two ring distances.
pub fn torus_distance(planes: usize, slots: usize, a: (usize, usize), b: (usize, usize)) -> usize {
    let ring = |x: usize, y: usize, m: usize| {
        let d = x.abs_diff(y);
        d.min(m - d)
    };
    ring(a.0, b.0, planes) + ring(a.1, b.1, slots)
}

/// Unit weights plus three seeded uniform models.
pub fn weight_models() -> Vec<WeightModel> {
    let mut models = vec![WeightModel::Unit];
    for seed in [1, 2, 3] {
        models.push(WeightModel::Uniform {
            lo: 0.5,
            hi: 10.0,
            seed,
        });
    }
    models
}

/// Every full torus with `P, S` in `3..=8`.
pub fn small_specs() -> Vec<GridSpec> {
    let mut specs = Vec::new();
    for p in 3..=8 {
        for s in 3..=8 {
            specs.push(GridSpec::torus(p, s));
        }
    }
    specs
}
