//! Rooted view of an instance's tree: parents, children, traversal orders.

use super::instance::Instance;
use super::ModelError;

/// Arborescence data for a structurally valid instance. Children and
/// adjacency lists are in index order, so every traversal is deterministic.
#[derive(Clone, Debug)]
pub struct Topology {
    pub adj: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Vertices in a root-first order; every parent precedes its children.
    pub preorder: Vec<usize>,
    pub depth: Vec<u32>,
}

impl Topology {
    pub fn of(inst: &Instance) -> Result<Topology, ModelError> {
        let n = inst.len();
        if inst.edges().len() != n - 1 {
            return Err(ModelError::Invalid("edge set is not a tree".to_string()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in inst.edges() {
            if a == b {
                return Err(ModelError::Invalid("self loop".to_string()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0u32; n];
        let mut preorder = Vec::with_capacity(n);
        let root = inst.root();
        let mut seen = vec![false; n];
        seen[root] = true;
        // Depth-first with an explicit stack; pushing children reversed keeps
        // the visit order equal to recursive smallest-index-first traversal.
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &w in adj[v].iter().rev() {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    children[v].push(w);
                    stack.push(w);
                }
            }
        }
        if preorder.len() != n {
            return Err(ModelError::Invalid("tree is not connected".to_string()));
        }
        for c in children.iter_mut() {
            c.sort_unstable();
        }
        Ok(Topology { adj, parent, children, preorder, depth })
    }

    /// Path from the root to v, inclusive.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}
