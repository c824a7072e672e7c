//! Problem instances: a tree topology, pinned terminal positions, and
//! per-terminal budgets on the root path length.

use std::collections::BTreeMap;

use super::geom::{HalfPoint, Length, COORD_BOUND};
use super::ModelError;

/// A terminal's pinned position and root path budget, in half-units.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Terminal {
    pub position: HalfPoint,
    pub limit: Length,
}

/// An immutable instance. Vertices are indexed `0..n` in lexicographic id
/// order, so iterating indices is already the deterministic order every
/// operation uses. Construction only rejects input that cannot be
/// represented (duplicate or unresolvable ids); structural problems such as
/// cycles are the business of `validate_instance` so they can be reported
/// rather than thrown.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    name: String,
    ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    root: usize,
    terminals: Vec<Option<Terminal>>,
    terminal_order: Vec<usize>,
}

impl Instance {
    pub fn new(
        name: &str,
        vertices: &[&str],
        edges: &[(&str, &str)],
        root: &str,
        terminals: &[(&str, HalfPoint, Length)],
    ) -> Result<Instance, ModelError> {
        let mut ids: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::DuplicateId(w[0].clone()));
            }
        }
        if ids.is_empty() {
            return Err(ModelError::Empty);
        }
        let index = |id: &str| -> Result<usize, ModelError> {
            ids.binary_search_by(|probe| probe.as_str().cmp(id))
                .map_err(|_| ModelError::UnknownId(id.to_string()))
        };
        let mut edge_idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (i, j) = (index(a)?, index(b)?);
            edge_idx.push((i.min(j), i.max(j)));
        }
        edge_idx.sort();
        let root = index(root)?;
        let mut term: Vec<Option<Terminal>> = vec![None; ids.len()];
        for (id, position, limit) in terminals {
            let v = index(id)?;
            if term[v].is_some() {
                return Err(ModelError::DuplicateId(id.to_string()));
            }
            term[v] = Some(Terminal { position: *position, limit: *limit });
        }
        if term[root].is_none() {
            // The root must carry a position for anything downstream to make
            // sense; validate_instance reports the terminal-set problems.
            return Err(ModelError::RootNotTerminal(ids[root].clone()));
        }
        let terminal_order = (0..ids.len()).filter(|&v| term[v].is_some()).collect();
        Ok(Instance {
            name: name.to_string(),
            ids,
            edges: edge_idx,
            root,
            terminals: term,
            terminal_order,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).ok()
    }

    /// Edges as sorted, normalized index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_position(&self) -> HalfPoint {
        self.terminals[self.root].unwrap().position
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals[v].is_some()
    }

    pub fn terminal(&self, v: usize) -> Option<Terminal> {
        self.terminals[v]
    }

    /// The budget for v's root path; Steiner vertices are unbudgeted.
    pub fn limit(&self, v: usize) -> Length {
        self.terminals[v].map_or(Length::INFINITY, |t| t.limit)
    }

    /// Terminal indices in id order.
    pub fn terminal_indices(&self) -> &[usize] {
        &self.terminal_order
    }

    pub fn steiner_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| !self.is_terminal(v))
    }

    /// The tight bounding box of the terminal positions.
    pub fn terminal_bbox(&self) -> (HalfPoint, HalfPoint) {
        let mut lo = HalfPoint::new(i64::MAX, i64::MAX);
        let mut hi = HalfPoint::new(i64::MIN, i64::MIN);
        for &t in &self.terminal_order {
            let p = self.terminals[t].unwrap().position;
            lo.x2 = lo.x2.min(p.x2);
            lo.y2 = lo.y2.min(p.y2);
            hi.x2 = hi.x2.max(p.x2);
            hi.y2 = hi.y2.max(p.y2);
        }
        (lo, hi)
    }

    /// Same instance with every position shifted by `d`. Limits are
    /// unaffected: path lengths are translation invariant.
    pub fn translated(&self, d: HalfPoint) -> Instance {
        let mut out = self.clone();
        for t in out.terminals.iter_mut().flatten() {
            t.position = t.position.offset(d.x2, d.y2);
        }
        out
    }

    /// Same instance with one terminal's limit replaced.
    pub fn with_limit(&self, id: &str, limit: Length) -> Instance {
        let mut out = self.clone();
        let v = out.index(id).expect("known terminal id");
        let t = out.terminals[v].as_mut().expect("terminal");
        t.limit = limit;
        out
    }

    /// Same instance with every budget removed.
    pub fn with_all_limits_infinite(&self) -> Instance {
        let mut out = self.clone();
        for t in out.terminals.iter_mut().flatten() {
            t.limit = Length::INFINITY;
        }
        out
    }

    /// Same instance with a different name.
    pub fn renamed(&self, name: &str) -> Instance {
        let mut out = self.clone();
        out.name = name.to_string();
        out
    }

    /// Same instance with every terminal rewritten through `f`.
    pub(crate) fn map_terminals(&self, mut f: impl FnMut(usize, Terminal) -> Terminal) -> Instance {
        let mut out = self.clone();
        for (v, slot) in out.terminals.iter_mut().enumerate() {
            if let Some(t) = slot {
                *t = f(v, *t);
            }
        }
        out
    }
}

/// One finding from `validate_instance`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub message: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    NotATree,
    SelfLoop,
    DuplicateEdge,
    RootNotTerminal,
    OddCoordinate,
    OddLimit,
    NegativeLimit,
    CoordinateOutOfRange,
    Unreachable,
}

/// Structural and feasibility findings for an instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub ok: bool,
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

/// Checks that the edge set is a tree, the root is a terminal, every stated
/// coordinate and finite limit is an even number of half-units (whole
/// instance units) inside the coordinate range, and no limit is negative.
/// `feasible` additionally requires, for every terminal, that the chained
/// distance through the terminals on its root path fits its budget. The
/// chain is a lower bound on any embedded path, and collapsing each Steiner
/// vertex onto its nearest terminal ancestor attains every chain at once,
/// so the condition is exact. With all terminals at leaves it reduces to
/// the straight L1 distance to the root. Structural failure forces
/// `feasible` to false.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    let n = inst.len();

    for &(a, b) in inst.edges() {
        if a == b {
            violations.push(Violation {
                kind: ViolationKind::SelfLoop,
                subject: inst.id(a).to_string(),
                message: format!("edge {}-{} is a self loop", inst.id(a), inst.id(b)),
            });
        }
    }
    for w in inst.edges().windows(2) {
        if w[0] == w[1] {
            violations.push(Violation {
                kind: ViolationKind::DuplicateEdge,
                subject: format!("{}-{}", inst.id(w[0].0), inst.id(w[0].1)),
                message: "edge listed twice".to_string(),
            });
        }
    }
    if inst.edges().len() != n - 1 {
        violations.push(Violation {
            kind: ViolationKind::NotATree,
            subject: inst.name().to_string(),
            message: format!("{} vertices need {} edges, found {}", n, n - 1, inst.edges().len()),
        });
    }
    // Connectivity check; with the edge count above this settles tree-ness.
    {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in inst.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![inst.root()];
        seen[inst.root()] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        for (v, reached) in seen.iter().enumerate() {
            if !reached {
                violations.push(Violation {
                    kind: ViolationKind::Unreachable,
                    subject: inst.id(v).to_string(),
                    message: format!("{} is not connected to the root", inst.id(v)),
                });
            }
        }
    }

    for &v in inst.terminal_indices() {
        let t = inst.terminal(v).unwrap();
        let id = inst.id(v).to_string();
        if !t.position.in_range() {
            violations.push(Violation {
                kind: ViolationKind::CoordinateOutOfRange,
                subject: id.clone(),
                message: format!("position {} exceeds the coordinate range", t.position),
            });
        }
        if t.position.x2 % 2 != 0 || t.position.y2 % 2 != 0 {
            violations.push(Violation {
                kind: ViolationKind::OddCoordinate,
                subject: id.clone(),
                message: format!("position {} is not on the unit grid", t.position),
            });
        }
        if let Some(l) = t.limit.value() {
            if l < 0 {
                violations.push(Violation {
                    kind: ViolationKind::NegativeLimit,
                    subject: id.clone(),
                    message: format!("limit {} is negative", l),
                });
            } else if l % 2 != 0 {
                violations.push(Violation {
                    kind: ViolationKind::OddLimit,
                    subject: id.clone(),
                    message: format!("limit {} half-units is not a whole unit", l),
                });
            }
        }
    }

    let ok = violations.is_empty();
    let mut feasible = ok;
    if ok {
        let topo = super::topology::Topology::of(inst).expect("validated tree");
        let mut chained = vec![0i64; n];
        let mut nearest = vec![inst.root(); n];
        for &v in &topo.preorder {
            if let Some(p) = topo.parent[v] {
                match inst.terminal(v) {
                    Some(t) => {
                        let a = nearest[p];
                        chained[v] =
                            chained[a] + t.position.l1(inst.terminal(a).unwrap().position);
                        nearest[v] = v;
                        if Length::finite(chained[v]) > t.limit {
                            feasible = false;
                        }
                    }
                    None => nearest[v] = nearest[p],
                }
            }
        }
    }
    ValidationReport { ok, feasible, violations }
}

/// Per-terminal root path lengths of an embedding, in half-units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathLengths {
    pub by_terminal: BTreeMap<usize, i64>,
    pub feasible: bool,
}

const _: () = assert!(COORD_BOUND > 0);
