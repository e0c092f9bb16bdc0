//! Torus-grid model of a constellation backbone.
//!
//! A grid has `planes` orbital planes with `slots` satellites each. Every
//! satellite links to its two in-plane neighbours (slot ± 1) and to the
//! satellites in the same slot of the two adjacent planes (plane ± 1), with
//! wraparound in both directions. Adjacency is computed from coordinates; only
//! the per-node 4-entry weight table is stored.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest ring size that keeps the four neighbours of a node distinct.
pub const MIN_RING: usize = 3;

/// Slot in the per-node weight table, in neighbour order.
const INTRA_PREV: usize = 0;
const INTRA_NEXT: usize = 1;
const INTER_LEFT: usize = 2;
const INTER_RIGHT: usize = 3;

/// Weight-table marker for a link removed by the seam. Real weights are >= 0.
const ABSENT: f64 = -1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopologyError {
    #[error("{name} must be >= {MIN_RING}, got {value}")]
    RingTooSmall { name: &'static str, value: usize },
    #[error("uniform weight bounds must satisfy 0 < lo <= hi, got lo={lo} hi={hi}")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("explicit {table} weight table has {len} entries, expected {expected}")]
    TableLength {
        table: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("explicit weight {value} at node {node} is not finite and non-negative")]
    InvalidWeight { node: usize, value: f64 },
    #[error("node {node} out of range for grid of {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("coordinates ({plane},{slot}) out of range for {planes}x{slots} grid")]
    CoordOutOfRange {
        plane: usize,
        slot: usize,
        planes: usize,
        slots: usize,
    },
    #[error("grid config: {0}")]
    Config(String),
}

/// Index of a satellite, `plane * slots + slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(u32);

impl NodeId {
    pub const fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeamPolicy {
    #[default]
    FullTorus,
    /// No inter-plane links between plane `P-1` and plane `0`.
    Seam,
}

/// Edge weights.
///
/// `Explicit` holds one weight per undirected edge: `intra[u]` is the link
/// from `u = (p, s)` to `(p, s+1)` and `inter[u]` the link from `u` to
/// `(p+1, s)`. Both tables have `N` entries. Under [`SeamPolicy::Seam`] the
/// `inter` entries of plane `P-1` are ignored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightModel {
    #[default]
    Unit,
    Uniform {
        lo: f64,
        hi: f64,
        seed: u64,
    },
    Explicit {
        intra: Vec<f64>,
        inter: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub planes: usize,
    pub slots: usize,
    #[serde(default)]
    pub seam: SeamPolicy,
    #[serde(default)]
    pub weights: WeightModel,
}

impl GridSpec {
    /// Unit-weight full torus.
    pub fn torus(planes: usize, slots: usize) -> Self {
        GridSpec {
            planes,
            slots,
            seam: SeamPolicy::FullTorus,
            weights: WeightModel::Unit,
        }
    }

    pub fn with_seam(mut self, seam: SeamPolicy) -> Self {
        self.seam = seam;
        self
    }

    pub fn with_weights(mut self, weights: WeightModel) -> Self {
        self.weights = weights;
        self
    }

    pub fn node_count(&self) -> usize {
        self.planes * self.slots
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.planes < MIN_RING {
            return Err(TopologyError::RingTooSmall {
                name: "planes",
                value: self.planes,
            });
        }
        if self.slots < MIN_RING {
            return Err(TopologyError::RingTooSmall {
                name: "slots",
                value: self.slots,
            });
        }
        match &self.weights {
            WeightModel::Unit => {}
            WeightModel::Uniform { lo, hi, .. } => {
                // NaN fails every comparison and lands here too.
                if !(*lo > 0.0 && lo <= hi && hi.is_finite()) {
                    return Err(TopologyError::InvalidBounds { lo: *lo, hi: *hi });
                }
            }
            WeightModel::Explicit { intra, inter } => {
                let n = self.node_count();
                for (table, values) in [("intra", intra), ("inter", inter)] {
                    if values.len() != n {
                        return Err(TopologyError::TableLength {
                            table,
                            len: values.len(),
                            expected: n,
                        });
                    }
                    if let Some((node, &value)) = values
                        .iter()
                        .enumerate()
                        .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
                    {
                        return Err(TopologyError::InvalidWeight { node, value });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses either a JSON object or `key=value` lines.
    ///
    /// Recognised keys: `planes`, `slots`, `seam` (`full_torus` | `seam`),
    /// `weight_model` (`unit` | `uniform`), `seed`, `lo`, `hi`. Blank lines
    /// and `#` comments are skipped. Explicit weight tables need JSON.
    pub fn parse_config(text: &str) -> Result<Self, TopologyError> {
        let spec = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| TopologyError::Config(e.to_string()))?
        } else {
            parse_key_values(text)?
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_config_file(path: &Path) -> Result<Self, TopologyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TopologyError::Config(format!("{}: {e}", path.display())))?;
        Self::parse_config(&text)
    }
}

fn parse_key_values(text: &str) -> Result<GridSpec, TopologyError> {
    fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, TopologyError> {
        value
            .parse()
            .map_err(|_| TopologyError::Config(format!("invalid value for {key}: {value:?}")))
    }

    let mut planes = None;
    let mut slots = None;
    let mut seam = SeamPolicy::FullTorus;
    let mut model = "unit".to_string();
    let mut seed = 0u64;
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;

    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| TopologyError::Config(format!("expected key=value, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "planes" => planes = Some(num(key, value)?),
            "slots" => slots = Some(num(key, value)?),
            "seam" => {
                seam = match value {
                    "full_torus" | "full" | "torus" => SeamPolicy::FullTorus,
                    "seam" => SeamPolicy::Seam,
                    other => {
                        return Err(TopologyError::Config(format!(
                            "unknown seam policy {other:?}"
                        )))
                    }
                }
            }
            "weight_model" => model = value.to_string(),
            "seed" => seed = num(key, value)?,
            "lo" => lo = num(key, value)?,
            "hi" => hi = num(key, value)?,
            other => return Err(TopologyError::Config(format!("unknown key {other:?}"))),
        }
    }

    let weights = match model.as_str() {
        "unit" => WeightModel::Unit,
        "uniform" => WeightModel::Uniform { lo, hi, seed },
        other => {
            return Err(TopologyError::Config(format!(
                "unsupported weight_model {other:?} in key=value config"
            )))
        }
    };
    Ok(GridSpec {
        planes: planes.ok_or_else(|| TopologyError::Config("missing planes".into()))?,
        slots: slots.ok_or_else(|| TopologyError::Config("missing slots".into()))?,
        seam,
        weights,
    })
}

/// Immutable torus grid with a flat weight table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationGrid {
    spec: GridSpec,
    /// `weights[4 * u + k]` for neighbour `k` of `u`; [`ABSENT`] marks a seam cut.
    weights: Vec<f64>,
}

impl ConstellationGrid {
    pub fn build(spec: GridSpec) -> Result<Self, TopologyError> {
        spec.validate()?;
        let (planes, slots) = (spec.planes, spec.slots);
        let n = spec.node_count();

        // One weight per undirected edge, keyed by its lower endpoint.
        let (intra, inter): (Vec<f64>, Vec<f64>) = match &spec.weights {
            WeightModel::Unit => (vec![1.0; n], vec![1.0; n]),
            WeightModel::Uniform { lo, hi, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut intra = Vec::with_capacity(n);
                let mut inter = Vec::with_capacity(n);
                for _ in 0..n {
                    intra.push(rng.gen_range(*lo..=*hi));
                    inter.push(rng.gen_range(*lo..=*hi));
                }
                (intra, inter)
            }
            WeightModel::Explicit { intra, inter } => (intra.clone(), inter.clone()),
        };

        let mut weights = vec![ABSENT; 4 * n];
        for plane in 0..planes {
            for slot in 0..slots {
                let u = plane * slots + slot;
                let prev = plane * slots + (slot + slots - 1) % slots;
                let left = ((plane + planes - 1) % planes) * slots + slot;
                weights[4 * u + INTRA_PREV] = intra[prev];
                weights[4 * u + INTRA_NEXT] = intra[u];
                let seam_cut = spec.seam == SeamPolicy::Seam;
                if !(seam_cut && plane == 0) {
                    weights[4 * u + INTER_LEFT] = inter[left];
                }
                if !(seam_cut && plane == planes - 1) {
                    weights[4 * u + INTER_RIGHT] = inter[u];
                }
            }
        }

        Ok(ConstellationGrid { spec, weights })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn planes(&self) -> usize {
        self.spec.planes
    }

    pub fn slots(&self) -> usize {
        self.spec.slots
    }

    pub fn node_count(&self) -> usize {
        self.spec.node_count()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.index() < self.node_count()
    }

    pub fn check_node(&self, node: NodeId) -> Result<(), TopologyError> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(TopologyError::NodeOutOfRange {
                node: node.index(),
                n: self.node_count(),
            })
        }
    }

    pub fn node_id(&self, plane: usize, slot: usize) -> Result<NodeId, TopologyError> {
        if plane >= self.planes() || slot >= self.slots() {
            return Err(TopologyError::CoordOutOfRange {
                plane,
                slot,
                planes: self.planes(),
                slots: self.slots(),
            });
        }
        Ok(NodeId::new(plane * self.slots() + slot))
    }

    pub fn coords(&self, node: NodeId) -> Result<(usize, usize), TopologyError> {
        self.check_node(node)?;
        Ok((node.index() / self.slots(), node.index() % self.slots()))
    }

    /// Neighbours of `node` in the order intra-prev, intra-next, inter-left,
    /// inter-right, skipping links cut by the seam.
    ///
    /// Panics if `node` is out of range.
    #[inline]
    pub fn neighbors(&self, node: NodeId) -> Neighbors {
        let (planes, slots) = (self.planes(), self.slots());
        let u = node.index();
        assert!(u < planes * slots, "node {u} out of range");
        let (plane, slot) = (u / slots, u % slots);
        let ids = [
            plane * slots + (slot + slots - 1) % slots,
            plane * slots + (slot + 1) % slots,
            ((plane + planes - 1) % planes) * slots + slot,
            ((plane + 1) % planes) * slots + slot,
        ];
        let w = &self.weights[4 * u..4 * u + 4];
        let mut out = Neighbors {
            items: [(NodeId::new(0), 0.0); 4],
            len: 0,
            pos: 0,
        };
        for k in 0..4 {
            if w[k] != ABSENT {
                out.items[out.len] = (NodeId::new(ids[k]), w[k]);
                out.len += 1;
            }
        }
        out
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.neighbors(node).len()
    }

    /// Weight of the link `u -> v`, if the two are adjacent.
    #[inline]
    pub fn weight_between(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.neighbors(u).find(|&(n, _)| n == v).map(|(_, w)| w)
    }

    pub fn edge_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w != ABSENT).count() / 2
    }

    /// The same topology with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> ConstellationGrid {
        ConstellationGrid {
            spec: self.spec.clone(),
            weights: self
                .weights
                .iter()
                .map(|&w| if w == ABSENT { w } else { w * factor })
                .collect(),
        }
    }
}

/// Up to four `(neighbour, weight)` pairs, stored inline.
#[derive(Debug, Clone)]
pub struct Neighbors {
    items: [(NodeId, f64); 4],
    len: usize,
    pos: usize,
}

impl Iterator for Neighbors {
    type Item = (NodeId, f64);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        if self.pos < self.len {
            self.pos += 1;
            Some(self.items[self.pos - 1])
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.len - self.pos;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Neighbors {}
