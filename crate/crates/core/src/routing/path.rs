use crate::topology::{ConstellationGrid, NodeId, TopologyError};

use super::{RoutingError, ShortestPathResult, INF};

/// Source-first node sequence from the result's source to `target`.
pub fn extract_path(
    result: &ShortestPathResult,
    target: NodeId,
) -> Result<Vec<NodeId>, RoutingError> {
    let n = result.node_count();
    if target.index() >= n {
        return Err(TopologyError::NodeOutOfRange {
            node: target.index(),
            n,
        }
        .into());
    }
    if result.distance[target.index()] == INF {
        return Err(RoutingError::Unreachable {
            from: result.source,
            target,
        });
    }
    let mut path = vec![target];
    let mut at = target;
    while at != result.source {
        match result.predecessor[at.index()] {
            Some(prev) if path.len() <= n => {
                path.push(prev);
                at = prev;
            }
            _ => {
                return Err(RoutingError::Unreachable {
                    from: result.source,
                    target,
                })
            }
        }
    }
    path.reverse();
    Ok(path)
}

/// Sum of link weights along `path`, or `None` if two consecutive nodes are
/// not adjacent.
pub fn path_length(grid: &ConstellationGrid, path: &[NodeId]) -> Option<f64> {
    path.windows(2).try_fold(0.0, |acc, hop| {
        Some(acc + grid.weight_between(hop[0], hop[1])?)
    })
}
