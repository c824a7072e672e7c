//! The full solver: local search run over a schedule of halving step sizes.
//!
//! Running the displacement rounds directly with step one finds the optimum
//! but may need as many rounds as the answer is long. The scaling schedule
//! keeps the round count small: level k works with step 2^k half-units,
//! starting at the coarsest level that still covers every terminal and
//! ending at one half-unit, where local optimality implies global
//! optimality. Each level starts from the previous level's result, so the
//! work left per level is bounded by how much detail the halved grid adds.
//!
//! Two level policies are offered. `Practical` keeps the original terminals
//! and budgets at every level and only confines the Steiner vertices to the
//! level's grid; every level then starts feasible and the code path is
//! simple. `Strict` additionally snaps terminals and budgets to the grid,
//! which keeps every quantity a level sees a multiple of its step; the
//! snap can break feasibility when the grid refines, which a repair sweep
//! mends before the rounds start. Both finish on the exact instance at
//! step one, so both return an optimum; they may differ in which one.

use std::collections::BTreeMap;

use crate::components::{
    affected_terminals_with, maximal_components_with, move_component, predict_deltas, Axis,
};
use crate::dp::{local_search, EvalContext};
use crate::model::{
    cost, path_lengths, validate_instance, Embedding, HalfPoint, Instance, Length, ModelError,
    Terminal,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveMode {
    Strict,
    Practical,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub mode: SolveMode,
    /// Cap on displacement rounds per level; None runs each level to local
    /// optimality, which the optimality guarantee needs.
    pub max_rounds_per_level: Option<u32>,
    /// Consecutive repair moves without progress tolerated before the level
    /// restarts from the trivial embedding.
    pub repair_cap: u32,
    /// When false the report's `levels` vector stays empty.
    pub emit_level_trace: bool,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            mode: SolveMode::Practical,
            max_rounds_per_level: None,
            repair_cap: 16,
            emit_level_trace: true,
        }
    }
}

/// What one level did. `cost_after` is measured against the level's own
/// instance, so under `Strict` it refers to the snapped terminals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LevelTrace {
    pub k: u32,
    pub step: i64,
    pub dp_rounds: u32,
    pub repair_iterations: u32,
    pub cost_after: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveReport {
    pub embedding: Embedding,
    /// Total length in half-units.
    pub cost: i64,
    /// Root path length per terminal id, in half-units.
    pub path_lengths: BTreeMap<String, i64>,
    pub feasible: bool,
    pub levels: Vec<LevelTrace>,
    pub grid_exponent: u32,
    /// Cost of the trivial embedding, the search's start.
    pub start_cost: i64,
}

/// Smallest m such that every terminal lies strictly within 2^m units of
/// the root on both axes. Level m is the coarsest useful level: its grid
/// snaps every terminal onto the root.
pub fn grid_exponent(inst: &Instance) -> u32 {
    let r = inst.root_position();
    let mut m = 0u32;
    for &t in inst.terminal_indices() {
        let p = inst.terminal(t).unwrap().position;
        for d in [(p.x2 - r.x2).abs(), (p.y2 - r.y2).abs()] {
            while i128::from(d) >= 1i128 << (m + 1) {
                m += 1;
            }
        }
    }
    m
}

/// The instance as level k sees it under `Strict`: terminal positions are
/// truncated toward the root onto the 2^(k+1) half-unit grid, and each
/// finite budget is reduced by its terminal's displacement and floored to
/// the same grid. A feasible instance stays feasible: truncating toward
/// the root shortens the straight-line distance by exactly the
/// displacement. Level 0 reproduces the instance, since positions and
/// budgets are whole units to begin with.
pub fn round_instance(inst: &Instance, k: u32) -> Instance {
    let g = 1i64 << (k + 1);
    let r = inst.root_position();
    inst.map_terminals(|_, t| {
        let dx = t.position.x2 - r.x2;
        let dy = t.position.y2 - r.y2;
        let p = HalfPoint::new(r.x2 + (dx - dx % g), r.y2 + (dy - dy % g));
        let moved = (t.position.x2 - p.x2).abs() + (t.position.y2 - p.y2).abs();
        let limit = match t.limit.value() {
            None => Length::INFINITY,
            Some(l) => Length::finite(g * (l - moved).div_euclid(g)),
        };
        Terminal { position: p, limit }
    })
}

/// Carry Steiner positions over to a level's instance, re-pinning the
/// terminals wherever that instance puts them.
fn warm_start(inst: &Instance, prev: &Embedding) -> Embedding {
    let positions = (0..inst.len())
        .map(|v| inst.terminal(v).map_or(prev.position(v), |t| t.position))
        .collect();
    Embedding::from_raw(positions)
}

pub(crate) struct RepairOutcome {
    pub emb: Embedding,
    pub iterations: u32,
}

fn total_excess(ctx: &EvalContext, emb: &Embedding) -> i64 {
    let inst = ctx.instance();
    ctx.path_lengths(emb)
        .by_terminal
        .iter()
        .filter_map(|(&t, &len)| inst.limit(t).value().map(|l| (len - l).max(0)))
        .sum()
}

/// One repair move: slide the first terminal-free component whose affected
/// set holds an overrun terminal one step toward its predecessor, which
/// shortens every affected root path by two steps. Components are scanned
/// axis by axis in their canonical order. None when no component qualifies.
fn repair_move(ctx: &EvalContext, emb: &Embedding) -> Option<Embedding> {
    let inst = ctx.instance();
    let topo = ctx.topo();
    let pl = ctx.path_lengths(emb);
    let over: Vec<usize> = pl
        .by_terminal
        .iter()
        .filter(|&(&t, &len)| Length::finite(len) > inst.limit(t))
        .map(|(&t, _)| t)
        .collect();
    for axis in [Axis::X, Axis::Y] {
        for comp in maximal_components_with(inst, topo, emb, axis) {
            if !comp.terminal_free {
                continue;
            }
            let affected = affected_terminals_with(inst, topo, &comp)
                .expect("terminal-free component has an affected set");
            if !over.iter().any(|t| affected.contains(t)) {
                continue;
            }
            let sign = comp.sign.expect("terminal-free component has a predecessor") as i64;
            let delta = -sign * ctx.step();
            // On step-aligned embeddings a one-step slide can only close a
            // gap to the frontier, never jump it; the check is for callers
            // holding unaligned embeddings.
            if predict_deltas(inst, emb, &[(comp.clone(), delta)]).is_err() {
                continue;
            }
            return Some(move_component(inst, emb, &comp, delta));
        }
    }
    None
}

/// Pull an overrun embedding back inside the budgets by repeated repair
/// moves. Every applied move lowers the total overrun, so this ends; the
/// stall cap and the no-candidate case both fall back to the trivial
/// embedding, which is feasible whenever the instance is.
pub(crate) fn repair(ctx: &EvalContext, emb: &Embedding, cap: u32) -> RepairOutcome {
    let mut cur = emb.clone();
    let mut iterations = 0u32;
    let mut stall = 0u32;
    let mut excess = total_excess(ctx, &cur);
    while excess > 0 {
        let next = match repair_move(ctx, &cur) {
            Some(next) => next,
            None => return RepairOutcome { emb: ctx.trivial_embedding(), iterations },
        };
        iterations += 1;
        let next_excess = total_excess(ctx, &next);
        if next_excess < excess {
            stall = 0;
        } else {
            stall += 1;
            if stall > cap {
                return RepairOutcome { emb: ctx.trivial_embedding(), iterations };
            }
        }
        cur = next;
        excess = next_excess;
    }
    RepairOutcome { emb: cur, iterations }
}

/// Solve the instance: validate, then run the level schedule from the
/// coarsest grid down to half-units. The returned embedding is optimal
/// among all embeddings satisfying the budgets, and feasibility of the
/// instance is required up front. The instance is solved in root-relative
/// coordinates so the level grids are anchored on the root; the report is
/// translated back.
pub fn solve(inst: &Instance, config: &SolveConfig) -> Result<SolveReport, ModelError> {
    let report = validate_instance(inst);
    if !report.ok {
        let first = &report.violations[0];
        return Err(ModelError::Invalid(format!("{}: {}", first.subject, first.message)));
    }
    if !report.feasible {
        return Err(ModelError::Infeasible);
    }

    let r = inst.root_position();
    let work = inst.translated(HalfPoint::new(-r.x2, -r.y2));
    let m = grid_exponent(&work);
    let start_cost = cost(&work, &Embedding::trivial(&work));

    let mut carried: Option<Embedding> = None;
    let mut levels = Vec::with_capacity(m as usize + 1);
    for k in (0..=m).rev() {
        let step = 1i64 << k;
        let level_inst = match config.mode {
            SolveMode::Strict => round_instance(&work, k),
            SolveMode::Practical => work.clone(),
        };
        let ctx = EvalContext::new(level_inst, step)?;
        let mut cur = match &carried {
            None => ctx.trivial_embedding(),
            Some(prev) => warm_start(ctx.instance(), prev),
        };
        let mut repair_iterations = 0;
        if !ctx.is_feasible(&cur) {
            let outcome = repair(&ctx, &cur, config.repair_cap);
            cur = outcome.emb;
            repair_iterations = outcome.iterations;
        }
        // Snapping can leave a level without any feasible embedding when
        // terminals sit inside the tree: budgets shrink while the chained
        // distances between snapped terminals may not. Such a level is
        // skipped. Level 0 always runs, since its instance is the input.
        let (next, dp_rounds) = if ctx.is_feasible(&cur) {
            local_search(&ctx, &cur, config.max_rounds_per_level)
                .expect("local search starts from a feasible embedding here")
        } else {
            (cur.clone(), 0)
        };
        if config.emit_level_trace {
            levels.push(LevelTrace {
                k,
                step,
                dp_rounds,
                repair_iterations,
                cost_after: ctx.cost(&next),
            });
        }
        carried = Some(next);
    }

    let embedding = carried.expect("at least level zero ran").translated(r);
    let pl = path_lengths(inst, &embedding);
    debug_assert!(pl.feasible);
    let by_id = pl.by_terminal.iter().map(|(&v, &d)| (inst.id(v).to_string(), d)).collect();
    Ok(SolveReport {
        cost: cost(inst, &embedding),
        embedding,
        path_lengths: by_id,
        feasible: pl.feasible,
        levels,
        grid_exponent: m,
        start_cost,
    })
}
