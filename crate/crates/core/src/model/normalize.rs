//! Reshaping an instance so terminals are leaves and Steiner vertices have
//! degree exactly three. The solver does not need this shape; it exists for
//! callers that want the classic form, and every step is reversible through
//! `collapse`.

use std::collections::{BTreeMap, BTreeSet};

use super::embedding::Embedding;
use super::geom::HalfPoint;
use super::instance::{Instance, Terminal};
use super::ModelError;

/// Result of `normalize_topology`. `origin` maps every auxiliary vertex of
/// the normalized instance to the original vertex it was grown from;
/// removed degree-one and degree-two Steiner vertices are remembered with a
/// surviving host so `collapse` can restore them.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub original: Instance,
    pub instance: Instance,
    pub origin: BTreeMap<String, String>,
    removed_host: BTreeMap<String, String>,
}

/// Rebuilds the topology: dangling Steiner leaves are dropped, degree-two
/// Steiner vertices are smoothed out, every internal terminal is replaced by
/// a junction Steiner vertex with the terminal hanging off it, and Steiner
/// vertices of degree four or more are split into degree-three chains.
///
/// An embedding of the original expands to the normalized instance by
/// placing each auxiliary vertex on its origin, which gives every auxiliary
/// edge zero length; such embeddings collapse back with identical cost and
/// path lengths. Instances already in normal form come back unchanged.
pub fn normalize_topology(inst: &Instance) -> Result<Normalized, ModelError> {
    super::topology::Topology::of(inst)?;

    let mut ids: BTreeSet<String> = inst.ids().iter().cloned().collect();
    let mut adj: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for id in inst.ids() {
        adj.insert(id.clone(), BTreeSet::new());
    }
    for &(a, b) in inst.edges() {
        let (a, b) = (inst.id(a).to_string(), inst.id(b).to_string());
        adj.get_mut(&a).unwrap().insert(b.clone());
        adj.get_mut(&b).unwrap().insert(a);
    }
    let is_terminal =
        |id: &str| -> bool { inst.index(id).map(|v| inst.is_terminal(v)).unwrap_or(false) };

    let mut origin: BTreeMap<String, String> = BTreeMap::new();
    let mut removed_host: BTreeMap<String, String> = BTreeMap::new();

    // Drop dangling Steiner leaves and smooth degree-two Steiner vertices
    // until none remain. Both keep every path between surviving vertices
    // intact, so a removed vertex can later be restored onto a neighbor.
    loop {
        let snapshot: Vec<String> = adj.keys().cloned().collect();
        let mut changed = false;
        for id in snapshot {
            if is_terminal(&id) || !adj.contains_key(&id) {
                continue;
            }
            let neighbors: Vec<String> = adj[&id].iter().cloned().collect();
            match neighbors.len() {
                0 | 1 => {
                    let host = neighbors
                        .first()
                        .cloned()
                        .unwrap_or_else(|| inst.id(inst.root()).to_string());
                    for n in &neighbors {
                        adj.get_mut(n).unwrap().remove(&id);
                    }
                    adj.remove(&id);
                    ids.remove(&id);
                    removed_host.insert(id, host);
                    changed = true;
                }
                2 => {
                    let (u, v) = (neighbors[0].clone(), neighbors[1].clone());
                    adj.get_mut(&u).unwrap().remove(&id);
                    adj.get_mut(&v).unwrap().remove(&id);
                    adj.get_mut(&u).unwrap().insert(v.clone());
                    adj.get_mut(&v).unwrap().insert(u.clone());
                    adj.remove(&id);
                    ids.remove(&id);
                    removed_host.insert(id, u.min(v));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let fresh = |base: &str, ids: &mut BTreeSet<String>| -> String {
        let mut k = 1usize;
        loop {
            let cand = format!("{}.{}", base, k);
            if ids.insert(cand.clone()) {
                return cand;
            }
            k += 1;
        }
    };

    // Hang internal terminals off a fresh junction that inherits their edges.
    let snapshot: Vec<String> = adj.keys().cloned().collect();
    for id in snapshot {
        if !is_terminal(&id) || adj[&id].len() < 2 {
            continue;
        }
        let junction = fresh(&id, &mut ids);
        let neighbors = std::mem::take(adj.get_mut(&id).unwrap());
        for n in &neighbors {
            let l = adj.get_mut(n).unwrap();
            l.remove(&id);
            l.insert(junction.clone());
        }
        let mut jl = neighbors;
        jl.insert(id.clone());
        adj.insert(junction.clone(), jl);
        adj.get_mut(&id).unwrap().insert(junction.clone());
        origin.insert(junction, id);
    }

    // Split Steiner vertices of degree four or more into chains of threes.
    let snapshot: Vec<String> = adj.keys().cloned().collect();
    for id in snapshot {
        if is_terminal(&id) {
            continue;
        }
        while adj[&id].len() > 3 {
            let moved: Vec<String> = adj[&id].iter().rev().take(2).cloned().collect();
            let base = origin.get(&id).cloned().unwrap_or_else(|| id.clone());
            let split = fresh(&base, &mut ids);
            let mut sl = BTreeSet::new();
            for n in &moved {
                adj.get_mut(&id).unwrap().remove(n);
                let l = adj.get_mut(n).unwrap();
                l.remove(&id);
                l.insert(split.clone());
                sl.insert(n.clone());
            }
            sl.insert(id.clone());
            adj.get_mut(&id).unwrap().insert(split.clone());
            adj.insert(split.clone(), sl);
            origin.insert(split, base);
        }
    }

    let vertices: Vec<&str> = adj.keys().map(|s| s.as_str()).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for (a, l) in &adj {
        for b in l {
            if a.as_str() < b.as_str() {
                edges.push((a, b));
            }
        }
    }
    let terminals: Vec<(&str, HalfPoint, super::geom::Length)> = inst
        .terminal_indices()
        .iter()
        .map(|&t| {
            let Terminal { position, limit } = inst.terminal(t).unwrap();
            (inst.id(t), position, limit)
        })
        .collect();
    let instance =
        Instance::new(inst.name(), &vertices, &edges, inst.id(inst.root()), &terminals)?;
    Ok(Normalized { original: inst.clone(), instance, origin, removed_host })
}

impl Normalized {
    /// Embedding of the normalized instance from one of the original:
    /// auxiliary vertices sit on their origin, so auxiliary edges have zero
    /// length.
    pub fn expand(&self, emb: &Embedding) -> Embedding {
        let positions = (0..self.instance.len())
            .map(|v| {
                let id = self.instance.id(v);
                let orig_id = self.origin.get(id).map(|s| s.as_str()).unwrap_or(id);
                emb.position(self.original.index(orig_id).expect("original vertex"))
            })
            .collect();
        Embedding::from_raw(positions)
    }

    /// Embedding of the original instance from one of the normalized.
    /// Auxiliary vertices are dropped; removed vertices come back on their
    /// host. Cost and path lengths match the normalized embedding whenever
    /// the auxiliary edges have zero length, which `expand` guarantees.
    pub fn collapse(&self, emb: &Embedding) -> Embedding {
        let resolve = |id: &str| -> HalfPoint {
            let mut cur = id.to_string();
            while let Some(host) = self.removed_host.get(&cur) {
                cur = host.clone();
            }
            emb.position(self.instance.index(&cur).expect("surviving vertex"))
        };
        let positions =
            (0..self.original.len()).map(|v| resolve(self.original.id(v))).collect();
        Embedding::from_raw(positions)
    }
}
