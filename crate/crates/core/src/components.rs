//! Axis components of an embedding and the movement calculus on them.
//!
//! An x component is a connected set of vertices that share an x coordinate
//! (symmetrically for y). Sliding a whole component along its axis is the
//! only way an embedding changes cost to first order, and the effect is
//! fully described by the component's frontier: the outside neighbors with
//! smaller and larger coordinate. The same frontier data tells which
//! terminals' root paths stretch or shrink, which is what the repair step
//! and the infeasibility diagnostics are built on.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::topology::Topology;
use crate::model::{Embedding, HalfPoint, Instance};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn coord(self, p: HalfPoint) -> i64 {
        match self {
            Axis::X => p.x2,
            Axis::Y => p.y2,
        }
    }

    fn shifted(self, p: HalfPoint, delta: i64) -> HalfPoint {
        match self {
            Axis::X => HalfPoint::new(p.x2 + delta, p.y2),
            Axis::Y => HalfPoint::new(p.x2, p.y2 + delta),
        }
    }
}

/// A maximal axis component of an embedding. `members` is sorted, as are
/// the frontier sets. `predecessor` is the frontier vertex through which
/// every root path enters the component; it is absent exactly when the root
/// itself is a member. `sign` is +1 when the predecessor sits on the
/// smaller-coordinate side, -1 on the larger, and follows `predecessor`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub axis: Axis,
    pub coord: i64,
    pub members: Vec<usize>,
    pub gamma_lt: Vec<usize>,
    pub gamma_gt: Vec<usize>,
    pub predecessor: Option<usize>,
    pub sign: Option<i8>,
    pub terminal_free: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ComponentsError {
    #[error("component containing a terminal has no affected-terminal set")]
    NotTerminalFree,
    #[error("component move breaks the coordinate order on edge {0}-{1}")]
    OrderViolated(String, String),
    #[error("components of one axis must be pairwise disjoint")]
    Overlapping,
    #[error("components containing terminals cannot move")]
    TerminalComponentMove,
}

/// Decompose the embedding into maximal components of one axis: the
/// connected parts of the subgraph whose edges join equal coordinates,
/// singletons included. Sorted by (coordinate, smallest member).
pub fn maximal_components(inst: &Instance, emb: &Embedding, axis: Axis) -> Vec<Component> {
    let topo = Topology::of(inst).expect("structurally valid instance");
    maximal_components_with(inst, &topo, emb, axis)
}

pub(crate) fn maximal_components_with(
    inst: &Instance,
    topo: &Topology,
    emb: &Embedding,
    axis: Axis,
) -> Vec<Component> {
    let n = inst.len();
    let coord = |v: usize| axis.coord(emb.position(v));
    let mut group = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if group[v] != usize::MAX {
            continue;
        }
        let g = groups.len();
        let mut members = vec![v];
        group[v] = g;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in &topo.adj[u] {
                if group[w] == usize::MAX && coord(w) == coord(u) {
                    group[w] = g;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }

    let mut out: Vec<Component> = groups
        .into_iter()
        .map(|members| {
            let c = coord(members[0]);
            let mut lt = BTreeSet::new();
            let mut gt = BTreeSet::new();
            for &v in &members {
                for &w in &topo.adj[v] {
                    if group[w] != group[v] {
                        if coord(w) < c {
                            lt.insert(w);
                        } else {
                            gt.insert(w);
                        }
                    }
                }
            }
            let contains_root = members.binary_search(&inst.root()).is_ok();
            let predecessor = if contains_root {
                None
            } else {
                // The shallowest member roots the component's subtree; its
                // parent is outside (equal coordinates would have merged it)
                // and every root path into the component passes it.
                let top = *members.iter().min_by_key(|&&v| topo.depth[v]).unwrap();
                Some(topo.parent[top].expect("non-root component has a parent"))
            };
            let sign = predecessor.map(|p| if coord(p) < c { 1 } else { -1 });
            let terminal_free = members.iter().all(|&v| !inst.is_terminal(v));
            Component {
                axis,
                coord: c,
                members,
                gamma_lt: lt.into_iter().collect(),
                gamma_gt: gt.into_iter().collect(),
                predecessor,
                sign,
                terminal_free,
            }
        })
        .collect();
    out.sort_by_key(|c| (c.coord, c.members[0]));
    out
}

/// Terminals whose root path enters and leaves the component on the side of
/// the predecessor. Exactly these paths change length when the component
/// slides: both crossing edges stretch or shrink together. Defined only for
/// terminal-free components.
pub fn affected_terminals(
    inst: &Instance,
    comp: &Component,
) -> Result<BTreeSet<usize>, ComponentsError> {
    if !comp.terminal_free {
        return Err(ComponentsError::NotTerminalFree);
    }
    let topo = Topology::of(inst).expect("structurally valid instance");
    affected_terminals_with(inst, &topo, comp)
}

pub(crate) fn affected_terminals_with(
    inst: &Instance,
    topo: &Topology,
    comp: &Component,
) -> Result<BTreeSet<usize>, ComponentsError> {
    if !comp.terminal_free {
        return Err(ComponentsError::NotTerminalFree);
    }
    let mut out = BTreeSet::new();
    for &t in inst.terminal_indices() {
        let mut lt_hits = 0usize;
        let mut gt_hits = 0usize;
        let mut cur = Some(t);
        while let Some(v) = cur {
            if comp.gamma_lt.binary_search(&v).is_ok() {
                lt_hits += 1;
            } else if comp.gamma_gt.binary_search(&v).is_ok() {
                gt_hits += 1;
            }
            cur = topo.parent[v];
        }
        // A root path meets the frontier twice exactly when it runs through
        // the component; a single hit just passes a neighbor by.
        if lt_hits == 2 || gt_hits == 2 {
            out.insert(t);
        }
    }
    Ok(out)
}

/// Slide the component's non-terminal members by `delta` along its axis.
/// Terminal members stay pinned, so moving a component that contains
/// terminals detaches them from the shared coordinate.
pub fn move_component(
    inst: &Instance,
    emb: &Embedding,
    comp: &Component,
    delta: i64,
) -> Embedding {
    let mut out = emb.clone();
    for &v in &comp.members {
        if !inst.is_terminal(v) {
            out.set_position(v, comp.axis.shifted(emb.position(v), delta));
        }
    }
    out
}

/// Predicted effect of sliding several components at once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MovePrediction {
    pub cost_delta: i64,
    /// Per-terminal root path length change; terminals missing here do not
    /// change.
    pub path_deltas: std::collections::BTreeMap<usize, i64>,
}

/// First-order prediction for a set of simultaneous component moves: the
/// cost changes by delta times (smaller frontier minus larger frontier) per
/// component, and each affected terminal's path by twice the signed delta.
/// Exact as long as every edge keeps its coordinate ordering, which is
/// checked; moves past a frontier vertex must be split up by the caller.
/// Components of one axis must not overlap, and only terminal-free
/// components may move.
pub fn predict_deltas(
    inst: &Instance,
    emb: &Embedding,
    moves: &[(Component, i64)],
) -> Result<MovePrediction, ComponentsError> {
    let topo = Topology::of(inst).expect("structurally valid instance");
    for axis in [Axis::X, Axis::Y] {
        let mut seen = BTreeSet::new();
        for (comp, _) in moves.iter().filter(|(c, _)| c.axis == axis) {
            for &v in &comp.members {
                if !seen.insert(v) {
                    return Err(ComponentsError::Overlapping);
                }
            }
        }
    }
    let mut moved = emb.clone();
    for (comp, delta) in moves {
        if *delta != 0 && !comp.terminal_free {
            return Err(ComponentsError::TerminalComponentMove);
        }
        moved = move_component(inst, &moved, comp, *delta);
    }
    for &(a, b) in inst.edges() {
        for axis in [Axis::X, Axis::Y] {
            let before = axis.coord(emb.position(a)).cmp(&axis.coord(emb.position(b)));
            let after = axis.coord(moved.position(a)).cmp(&axis.coord(moved.position(b)));
            let flipped = match before {
                std::cmp::Ordering::Equal => after != before,
                _ => after == before.reverse(),
            };
            if flipped {
                return Err(ComponentsError::OrderViolated(
                    inst.id(a).to_string(),
                    inst.id(b).to_string(),
                ));
            }
        }
    }

    let mut cost_delta = 0i64;
    let mut path_deltas = std::collections::BTreeMap::new();
    for (comp, delta) in moves {
        if *delta == 0 {
            continue;
        }
        cost_delta += delta * (comp.gamma_lt.len() as i64 - comp.gamma_gt.len() as i64);
        let sign = comp.sign.expect("terminal-free component has a sign") as i64;
        for t in affected_terminals_with(inst, &topo, comp)? {
            *path_deltas.entry(t).or_insert(0) += 2 * sign * delta;
        }
    }
    Ok(MovePrediction { cost_delta, path_deltas })
}

/// True when every pair of sets is nested or disjoint.
pub fn check_laminar(family: &[BTreeSet<usize>]) -> bool {
    for (i, a) in family.iter().enumerate() {
        for b in family.iter().skip(i + 1) {
            let common = a.intersection(b).count();
            if common != 0 && common != a.len().min(b.len()) {
                return false;
            }
        }
    }
    true
}
