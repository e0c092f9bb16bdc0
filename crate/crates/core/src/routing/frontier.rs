use crate::topology::NodeId;

/// Discovered-but-unsettled nodes, kept as an unordered array.
///
/// A per-node flag makes membership O(1) and keeps the array duplicate-free.
/// Removal swaps the last element into the hole, so member order is
/// arbitrary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    members: Vec<NodeId>,
    in_frontier: Vec<bool>,
}

impl Frontier {
    pub fn new(node_count: usize) -> Self {
        Frontier {
            members: Vec::new(),
            in_frontier: vec![false; node_count],
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, node: NodeId) -> bool {
        self.in_frontier[node.index()]
    }

    /// Appends `node` unless already present. Returns whether it was added.
    #[inline]
    pub fn insert(&mut self, node: NodeId) -> bool {
        let flag = &mut self.in_frontier[node.index()];
        if *flag {
            return false;
        }
        *flag = true;
        self.members.push(node);
        true
    }

    /// Removes the member at array position `pos`.
    #[inline]
    pub fn swap_remove_at(&mut self, pos: usize) -> NodeId {
        let node = self.members.swap_remove(pos);
        self.in_frontier[node.index()] = false;
        node
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    /// Checks that the array and the flags agree and that no member repeats.
    pub fn check_consistency(&self) -> Result<(), String> {
        let mut seen = vec![false; self.in_frontier.len()];
        for &node in &self.members {
            if std::mem::replace(&mut seen[node.index()], true) {
                return Err(format!("node {node} appears twice in the frontier"));
            }
        }
        if seen != self.in_frontier {
            return Err("frontier membership flags disagree with the member array".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_is_idempotent() {
        let mut f = Frontier::new(5);
        assert!(f.insert(NodeId::new(3)));
        assert!(!f.insert(NodeId::new(3)));
        assert_eq!(f.len(), 1);
        assert!(f.contains(NodeId::new(3)));
        f.check_consistency().unwrap();
    }

    #[test]
    fn swap_remove_moves_last_into_hole() {
        let mut f = Frontier::new(6);
        for i in [1, 4, 2, 5] {
            f.insert(NodeId::new(i));
        }
        assert_eq!(f.swap_remove_at(1), NodeId::new(4));
        assert_eq!(
            f.as_slice(),
            &[NodeId::new(1), NodeId::new(5), NodeId::new(2)]
        );
        assert!(!f.contains(NodeId::new(4)));
        f.check_consistency().unwrap();
        assert!(f.insert(NodeId::new(4)));
    }
}
