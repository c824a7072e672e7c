//! One round of the budgeted displacement dynamic program, and local search
//! built on top of it.
//!
//! A round starts from an embedding and considers moving every Steiner
//! vertex independently by one of nine offsets: -s, 0, +s per axis, for a
//! fixed step s in half-units. Terminals never move. Among these
//! alternatives the program finds a cheapest one that keeps every root path
//! within its terminal's budget. The budget is threaded through the tree as
//! the length already spent above the current vertex: a placement of v is
//! charged `lambda`, and a terminal accepts only if its own budget covers
//! `lambda`. Repeating rounds until no strict improvement exists is a
//! complete optimizer once s reaches one half-unit: a suboptimal embedding
//! on the half-unit grid always admits an improving one-step round.

use std::collections::HashMap;

use thiserror::Error;

use crate::model::topology::Topology;
use crate::model::{
    cost, path_lengths_with, Embedding, HalfPoint, Instance, Length, ModelError, PathLengths,
};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum DpError {
    #[error("improvement rounds need a feasible starting embedding")]
    InfeasibleStart,
}

/// Everything a round evaluates against: the instance whose positions and
/// limits are in force, its rooted topology, and the displacement step.
#[derive(Clone, Debug)]
pub struct EvalContext {
    inst: Instance,
    topo: Topology,
    step: i64,
}

impl EvalContext {
    pub fn new(inst: Instance, step: i64) -> Result<EvalContext, ModelError> {
        assert!(
            step >= 1 && step & (step - 1) == 0,
            "displacement step must be a positive power of two in half-units"
        );
        let topo = Topology::of(&inst)?;
        Ok(EvalContext { inst, topo, step })
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub(crate) fn topo(&self) -> &Topology {
        &self.topo
    }

    pub fn cost(&self, emb: &Embedding) -> i64 {
        cost(&self.inst, emb)
    }

    pub fn path_lengths(&self, emb: &Embedding) -> PathLengths {
        path_lengths_with(&self.inst, &self.topo, emb)
    }

    pub fn is_feasible(&self, emb: &Embedding) -> bool {
        self.path_lengths(emb).feasible
    }

    /// Steiner vertices collapsed onto their nearest terminal ancestors;
    /// feasible whenever the instance is.
    pub fn trivial_embedding(&self) -> Embedding {
        Embedding::trivial(&self.inst)
    }
}

/// The nine displacements in tie-breaking order: staying put is preferred,
/// then lexicographically smallest (dx, dy).
fn candidates(s: i64) -> [(i64, i64); 9] {
    [(0, 0), (-s, -s), (-s, 0), (-s, s), (0, -s), (0, s), (s, -s), (s, 0), (s, s)]
}

fn encode(s: i64, delta: (i64, i64)) -> u8 {
    let axis = |d: i64| -> u8 {
        match d {
            0 => 1,
            d if d == -s => 0,
            d if d == s => 2,
            _ => panic!("displacement {} is not in {{-{s}, 0, {s}}}", d),
        }
    };
    axis(delta.0) * 3 + axis(delta.1)
}

/// Memoized table of one round's subproblems over a fixed base embedding.
pub struct DpContext<'a> {
    ctx: &'a EvalContext,
    base: &'a Embedding,
    memo: HashMap<(u32, u8, i64), Length>,
    /// Whether the subtree under v contains a finitely budgeted terminal;
    /// if not, the table value cannot depend on lambda and is stored once.
    budget_relevant: Vec<bool>,
    /// Root path length to each vertex in the base embedding, for the
    /// lambda-locality diagnostic.
    base_dist: Vec<i64>,
}

/// Summary of the memo table, used to check the lambda-locality diagnostic:
/// every lambda ever queried stays within 4ns of the base path length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DpStats {
    pub states: usize,
    pub max_lambda_deviation: i64,
}

impl<'a> DpContext<'a> {
    pub fn new(ctx: &'a EvalContext, base: &'a Embedding) -> DpContext<'a> {
        let inst = ctx.instance();
        let n = inst.len();
        let topo = ctx.topo();
        let mut budget_relevant = vec![false; n];
        let mut base_dist = vec![0i64; n];
        for &v in &topo.preorder {
            if let Some(p) = topo.parent[v] {
                base_dist[v] = base_dist[p] + base.position(p).l1(base.position(v));
            }
        }
        for &v in topo.preorder.iter().rev() {
            let own = inst.is_terminal(v) && inst.limit(v).is_finite();
            budget_relevant[v] =
                own || topo.children[v].iter().any(|&w| budget_relevant[w]);
        }
        DpContext { ctx, base, memo: HashMap::new(), budget_relevant, base_dist }
    }

    fn displaced(&self, v: usize, delta: (i64, i64)) -> HalfPoint {
        self.base.position(v).offset(delta.0, delta.1)
    }

    /// Cheapest placement of v's subtree with v displaced by `delta`, given
    /// that the path from the root down to v already spends `lambda`
    /// half-units. INFINITY when no placement keeps all budgets below v.
    pub fn gamma(&mut self, v: usize, delta: (i64, i64), lambda: i64) -> Length {
        let s = self.ctx.step();
        let code = encode(s, delta);
        let key = (v as u32, code, if self.budget_relevant[v] { lambda } else { 0 });
        if let Some(&val) = self.memo.get(&key) {
            return val;
        }
        let val = self.compute(v, delta, lambda);
        self.memo.insert(key, val);
        val
    }

    fn compute(&mut self, v: usize, delta: (i64, i64), lambda: i64) -> Length {
        let inst = self.ctx.instance();
        if inst.is_terminal(v) && (delta != (0, 0) || Length::finite(lambda) > inst.limit(v)) {
            return Length::INFINITY;
        }
        let s = self.ctx.step();
        let pv = self.displaced(v, delta);
        let mut total = 0i64;
        for w in self.ctx.topo().children[v].clone() {
            let mut best = Length::INFINITY;
            for dw in candidates(s) {
                if inst.is_terminal(w) && dw != (0, 0) {
                    continue;
                }
                let e = pv.l1(self.displaced(w, dw));
                let val = self.gamma(w, dw, lambda + e).plus(e);
                best = best.min(val);
            }
            match best.value() {
                Some(b) => total += b,
                None => return Length::INFINITY,
            }
        }
        Length::finite(total)
    }

    pub fn stats(&self) -> DpStats {
        let mut max_dev = 0i64;
        for &(v, _, lambda) in self.memo.keys() {
            if self.budget_relevant[v as usize] {
                max_dev = max_dev.max((lambda - self.base_dist[v as usize]).abs());
            }
        }
        DpStats { states: self.memo.len(), max_lambda_deviation: max_dev }
    }
}

/// Run one full round: evaluate the table from the root and extract a
/// cheapest feasible one-step displacement of the starting embedding.
/// The result never costs more than the start (staying put is always
/// allowed), stays feasible, and when the start is already optimal within
/// the neighborhood the start itself comes back, because ties prefer
/// staying put. Returns the new embedding with its cost.
pub fn improve_round(ctx: &EvalContext, emb: &Embedding) -> Result<(Embedding, i64), DpError> {
    if !ctx.is_feasible(emb) {
        return Err(DpError::InfeasibleStart);
    }
    let root = ctx.instance().root();
    let mut dp = DpContext::new(ctx, emb);
    let total = dp
        .gamma(root, (0, 0), 0)
        .value()
        .expect("a feasible start is itself a candidate");

    let mut out = emb.clone();
    let s = ctx.step();
    let mut stack = vec![(root, (0i64, 0i64), 0i64)];
    while let Some((v, delta, lambda)) = stack.pop() {
        out.set_position(v, emb.position(v).offset(delta.0, delta.1));
        let pv = out.position(v);
        for w in ctx.topo().children[v].clone() {
            let mut best = Length::INFINITY;
            let mut choice = None;
            for dw in candidates(s) {
                if ctx.instance().is_terminal(w) && dw != (0, 0) {
                    continue;
                }
                let e = pv.l1(emb.position(w).offset(dw.0, dw.1));
                let val = dp.gamma(w, dw, lambda + e).plus(e);
                if val < best {
                    best = val;
                    choice = Some((dw, lambda + e));
                }
            }
            let (dw, lw) = choice.expect("finite total implies a finite child choice");
            stack.push((w, dw, lw));
        }
    }
    debug_assert_eq!(ctx.cost(&out), total);
    debug_assert!(ctx.is_feasible(&out));
    Ok((out, total))
}

/// Iterate rounds until one fails to improve the cost (that closing round
/// certifies local optimality and is included in the count), or until
/// `max_rounds`. With step one on the half-unit grid the result is globally
/// optimal: any cheaper embedding would leave an improving one-step round.
pub fn local_search(
    ctx: &EvalContext,
    emb: &Embedding,
    max_rounds: Option<u32>,
) -> Result<(Embedding, u32), DpError> {
    let mut cur = emb.clone();
    let mut cur_cost = ctx.cost(&cur);
    let mut rounds = 0u32;
    loop {
        if let Some(cap) = max_rounds {
            if rounds >= cap {
                break;
            }
        }
        let (next, next_cost) = improve_round(ctx, &cur)?;
        rounds += 1;
        if next_cost < cur_cost {
            cur = next;
            cur_cost = next_cost;
        } else {
            break;
        }
    }
    Ok((cur, rounds))
}
