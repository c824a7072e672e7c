//! Exhaustive reference solver for small instances.
//!
//! Every Steiner vertex is tried on every point of a grid covering the
//! terminal bounding box. Clamping any embedding into that box never
//! raises a cost or a path length, so the box always holds an optimum, and
//! an optimum with all coordinates on the half-unit grid always exists, so
//! searching the unit-1 grid is exact. The search is depth first in
//! lexicographic order and keeps the first optimum it proves, which makes
//! the answer deterministic: the lexicographically smallest optimal
//! placement on the searched grid, ordered by vertex id. Subtrees are cut
//! when the already-fixed edges alone reach the best known cost, or when a
//! fully placed root path overruns its budget.

use thiserror::Error;

use crate::model::topology::Topology;
use crate::model::{
    cost, validate_instance, Embedding, HalfPoint, Instance, Length, ModelError,
};

/// Cap on the nominal search space, checked before the search starts:
/// grid points raised to the number of Steiner vertices, ignoring pruning.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OracleBudget {
    pub max_placements: u64,
}

impl Default for OracleBudget {
    fn default() -> OracleBudget {
        OracleBudget { max_placements: 10_000_000 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum OracleError {
    #[error("{0}")]
    Invalid(#[from] ModelError),
    #[error("no placement on the searched grid satisfies the limits")]
    Infeasible,
    #[error("{nominal} candidate placements exceed the budget of {budget}")]
    BudgetExceeded { nominal: u128, budget: u64 },
}

/// Grid points spaced `unit` half-units covering the terminal bounding
/// box, in lexicographic order.
pub fn enumerate_grid(inst: &Instance, unit: i64) -> Vec<HalfPoint> {
    assert!(unit >= 1, "grid unit must be positive");
    let (lo, hi) = inst.terminal_bbox();
    let mut out = Vec::new();
    let mut x = lo.x2;
    while x <= hi.x2 {
        let mut y = lo.y2;
        while y <= hi.y2 {
            out.push(HalfPoint::new(x, y));
            y += unit;
        }
        x += unit;
    }
    out
}

/// The optimum over all placements on the half-unit grid, which is the
/// true optimum of the instance.
pub fn brute_force_optimum(
    inst: &Instance,
    budget: &OracleBudget,
) -> Result<(Embedding, i64), OracleError> {
    brute_force_optimum_with_unit(inst, 1, budget)
}

/// The optimum over placements on a coarser grid; exact for unit 1. Errors
/// with `Infeasible` when the instance has no feasible embedding at all or
/// the chosen grid misses all of them.
pub fn brute_force_optimum_with_unit(
    inst: &Instance,
    unit: i64,
    budget: &OracleBudget,
) -> Result<(Embedding, i64), OracleError> {
    let report = validate_instance(inst);
    if !report.ok {
        let detail =
            report.violations.iter().map(|v| v.message.clone()).collect::<Vec<_>>().join("; ");
        return Err(OracleError::Invalid(ModelError::Invalid(detail)));
    }
    if !report.feasible {
        return Err(OracleError::Infeasible);
    }

    let steiner: Vec<usize> = inst.steiner_indices().collect();
    let grid = enumerate_grid(inst, unit);
    let nominal =
        (grid.len() as u128).checked_pow(steiner.len() as u32).unwrap_or(u128::MAX);
    if nominal > u128::from(budget.max_placements) {
        return Err(OracleError::BudgetExceeded { nominal, budget: budget.max_placements });
    }

    let topo = Topology::of(inst).expect("validated instance");
    let n = inst.len();
    // Terminals count as placed from the start; the i-th Steiner vertex
    // after i+1 levels of the search.
    let mut placed_at = vec![0usize; n];
    for (i, &v) in steiner.iter().enumerate() {
        placed_at[v] = i + 1;
    }
    let mut edges_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); steiner.len() + 1];
    for &(a, b) in inst.edges() {
        edges_at[placed_at[a].max(placed_at[b])].push((a, b));
    }
    let mut paths_at: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); steiner.len() + 1];
    for &t in inst.terminal_indices() {
        let path = topo.root_path(t);
        let done = path.iter().map(|&v| placed_at[v]).max().unwrap();
        paths_at[done].push((t, path));
    }

    // Seeding the bound with the trivial embedding prunes early; only
    // valid when its positions lie on the searched grid.
    let trivial = Embedding::trivial(inst);
    let lo = inst.terminal_bbox().0;
    let on_grid = |p: HalfPoint| (p.x2 - lo.x2) % unit == 0 && (p.y2 - lo.y2) % unit == 0;
    let bound = if steiner.iter().all(|&v| on_grid(trivial.position(v))) {
        cost(inst, &trivial) + 1
    } else {
        i64::MAX
    };

    let pos = (0..n).map(|v| inst.terminal(v).map_or(lo, |t| t.position)).collect();
    let mut search = Search { inst, steiner: &steiner, grid: &grid, edges_at, paths_at, pos, bound, best: None };
    let fixed: i64 = search.edges_at[0].iter().map(|&(a, b)| search.pos[a].l1(search.pos[b])).sum();
    search.run(0, fixed);
    match search.best {
        Some((positions, total)) => Ok((Embedding::from_raw(positions), total)),
        None => Err(OracleError::Infeasible),
    }
}

struct Search<'a> {
    inst: &'a Instance,
    steiner: &'a [usize],
    grid: &'a [HalfPoint],
    edges_at: Vec<Vec<(usize, usize)>>,
    paths_at: Vec<Vec<(usize, Vec<usize>)>>,
    pos: Vec<HalfPoint>,
    bound: i64,
    best: Option<(Vec<HalfPoint>, i64)>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, partial: i64) {
        if depth == self.steiner.len() {
            // Reached only with partial < bound, so each accepted placement
            // strictly improves and the first optimum in order is kept.
            self.bound = partial;
            self.best = Some((self.pos.clone(), partial));
            return;
        }
        let v = self.steiner[depth];
        for i in 0..self.grid.len() {
            self.pos[v] = self.grid[i];
            let mut cand = partial;
            for &(a, b) in &self.edges_at[depth + 1] {
                cand += self.pos[a].l1(self.pos[b]);
            }
            if cand >= self.bound {
                continue;
            }
            let overrun = self.paths_at[depth + 1].iter().any(|(t, path)| {
                let len: i64 =
                    path.windows(2).map(|w| self.pos[w[0]].l1(self.pos[w[1]])).sum();
                Length::finite(len) > self.inst.limit(*t)
            });
            if overrun {
                continue;
            }
            self.run(depth + 1, cand);
        }
    }
}
