//! Embeddings: a position for every vertex, terminals pinned.

use std::collections::BTreeMap;

use super::geom::{HalfPoint, Length};
use super::instance::{Instance, PathLengths};
use super::topology::Topology;
use super::ModelError;

/// Positions indexed like the instance's vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    positions: Vec<HalfPoint>,
}

impl Embedding {
    /// Every Steiner vertex collapsed onto its nearest terminal ancestor:
    /// the root when all terminals are leaves. Each root path then costs
    /// the chained distance through the terminals on it, the smallest any
    /// embedding can make it, so this is feasible whenever the instance
    /// is. Panics if the instance is not structurally a tree.
    pub fn trivial(inst: &Instance) -> Embedding {
        let topo = Topology::of(inst).expect("structurally valid instance");
        let mut positions = vec![HalfPoint::new(0, 0); inst.len()];
        for &v in &topo.preorder {
            positions[v] = match inst.terminal(v) {
                Some(t) => t.position,
                None => positions[topo.parent[v].expect("the root is a terminal")],
            };
        }
        Embedding { positions }
    }

    /// Build from a full id -> position map; terminals must sit exactly on
    /// their pinned positions.
    pub fn from_positions(
        inst: &Instance,
        positions: &BTreeMap<String, HalfPoint>,
    ) -> Result<Embedding, ModelError> {
        if positions.len() != inst.len() {
            return Err(ModelError::Invalid(format!(
                "expected {} positions, got {}",
                inst.len(),
                positions.len()
            )));
        }
        let mut out = Vec::with_capacity(inst.len());
        for v in 0..inst.len() {
            let p = positions
                .get(inst.id(v))
                .ok_or_else(|| ModelError::UnknownId(inst.id(v).to_string()))?;
            if let Some(t) = inst.terminal(v) {
                if t.position != *p {
                    return Err(ModelError::Invalid(format!(
                        "terminal {} must sit at {}, found {}",
                        inst.id(v),
                        t.position,
                        p
                    )));
                }
            }
            out.push(*p);
        }
        Ok(Embedding { positions: out })
    }

    pub(crate) fn from_raw(positions: Vec<HalfPoint>) -> Embedding {
        Embedding { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, v: usize) -> HalfPoint {
        self.positions[v]
    }

    pub(crate) fn set_position(&mut self, v: usize, p: HalfPoint) {
        self.positions[v] = p;
    }

    pub fn positions(&self) -> &[HalfPoint] {
        &self.positions
    }

    pub fn translated(&self, d: HalfPoint) -> Embedding {
        Embedding {
            positions: self.positions.iter().map(|p| p.offset(d.x2, d.y2)).collect(),
        }
    }
}

/// Total L1 edge length of the embedding, in half-units.
pub fn cost(inst: &Instance, emb: &Embedding) -> i64 {
    assert_eq!(inst.len(), emb.len(), "embedding does not match instance");
    inst.edges()
        .iter()
        .map(|&(a, b)| emb.position(a).l1(emb.position(b)))
        .sum()
}

/// Root path length of every terminal, plus whether all budgets hold.
/// Panics if the instance is not structurally a tree.
pub fn path_lengths(inst: &Instance, emb: &Embedding) -> PathLengths {
    let topo = Topology::of(inst).expect("structurally valid instance");
    path_lengths_with(inst, &topo, emb)
}

pub(crate) fn path_lengths_with(
    inst: &Instance,
    topo: &Topology,
    emb: &Embedding,
) -> PathLengths {
    let mut dist = vec![0i64; inst.len()];
    for &v in &topo.preorder {
        if let Some(p) = topo.parent[v] {
            dist[v] = dist[p] + emb.position(p).l1(emb.position(v));
        }
    }
    let mut by_terminal = BTreeMap::new();
    let mut feasible = true;
    for &t in inst.terminal_indices() {
        by_terminal.insert(t, dist[t]);
        if Length::finite(dist[t]) > inst.limit(t) {
            feasible = false;
        }
    }
    PathLengths { by_terminal, feasible }
}

/// How much budget is left below each vertex: a root path may spend at most
/// this much to reach v without overrunning some terminal beneath it.
/// Computed bottom-up; a terminal reports its own limit, any other vertex
/// the minimum over its children of the child's value minus the edge to it.
/// Vertices over no budgeted terminal report INFINITY.
pub fn extended_restrictions(inst: &Instance, emb: &Embedding) -> Vec<Length> {
    let topo = Topology::of(inst).expect("structurally valid instance");
    let mut out = vec![Length::INFINITY; inst.len()];
    for &v in topo.preorder.iter().rev() {
        if inst.is_terminal(v) {
            out[v] = inst.limit(v);
        } else {
            let mut m = Length::INFINITY;
            for &w in &topo.children[v] {
                m = m.min(out[w].plus(-emb.position(v).l1(emb.position(w))));
            }
            out[v] = m;
        }
    }
    out
}

/// Clamp every Steiner position into the terminal bounding box, one
/// coordinate at a time. Clamping is a contraction per axis, so no edge gets
/// longer and no root path gets longer; searching inside the box only is
/// therefore lossless for both cost and feasibility.
pub fn clamp_to_bbox(inst: &Instance, emb: &Embedding) -> Embedding {
    let (lo, hi) = inst.terminal_bbox();
    let mut out = emb.clone();
    for v in inst.steiner_indices() {
        let p = emb.position(v);
        out.set_position(
            v,
            HalfPoint::new(p.x2.clamp(lo.x2, hi.x2), p.y2.clamp(lo.y2, hi.y2)),
        );
    }
    out
}
