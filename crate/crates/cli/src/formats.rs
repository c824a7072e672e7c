//! Canonical file formats: instances travel as real-unit integers, solutions
//! as half-unit integers. The writers are the format definition; parsing a
//! canonically written document and serializing it again is byte-identical.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use steiner_embed::model::{
    cost, path_lengths, validate_instance, Embedding, HalfPoint, Instance, Length, COORD_BOUND,
};
use steiner_embed::scaling::{SolveMode, SolveReport};

use crate::CliError;

/// The instance grammar. Coordinates and limits are whole real units;
/// `limit: null` means unbounded. Canonical order: vertices sorted, edges
/// as sorted pairs in sorted order, terminals sorted by id.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub name: String,
    pub root: String,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub terminals: Vec<TerminalDoc>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminalDoc {
    pub id: String,
    pub x: i64,
    pub y: i64,
    pub limit: Option<i64>,
}

/// A solved embedding. Everything is in half-units: `x2`, `y2`, `cost2`,
/// `length2`, `limit2`. Vertices and paths are sorted by id.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub instance: String,
    pub mode: String,
    pub cost2: i64,
    pub feasible: bool,
    pub grid_exponent: u32,
    pub start_cost2: i64,
    pub vertices: Vec<VertexDoc>,
    pub paths: Vec<PathDoc>,
    pub levels: Vec<LevelDoc>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub x2: i64,
    pub y2: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDoc {
    pub id: String,
    pub length2: i64,
    pub limit2: Option<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub k: u32,
    pub step2: i64,
    pub dp_rounds: u32,
    pub repair_iterations: u32,
    pub cost2_after: i64,
}

fn unit_in_range(v: i64) -> bool {
    v.checked_mul(2).is_some_and(|d| d.abs() <= COORD_BOUND)
}

/// Parse and structurally validate an instance document. Feasibility is
/// not checked here; it is a property of the budgets, not of the document.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let doc: InstanceDoc = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    instance_from_doc(&doc)
}

pub fn instance_from_doc(doc: &InstanceDoc) -> Result<Instance, CliError> {
    for t in &doc.terminals {
        if !unit_in_range(t.x) || !unit_in_range(t.y) {
            return Err(CliError::Parse(format!(
                "terminal {}: coordinate ({}, {}) out of range",
                t.id, t.x, t.y
            )));
        }
        if let Some(l) = t.limit {
            if !unit_in_range(l) {
                return Err(CliError::Parse(format!("terminal {}: limit {l} out of range", t.id)));
            }
        }
    }
    let vertices: Vec<&str> = doc.vertices.iter().map(|s| s.as_str()).collect();
    let edges: Vec<(&str, &str)> =
        doc.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let terminals: Vec<(&str, HalfPoint, Length)> = doc
        .terminals
        .iter()
        .map(|t| {
            let limit = t.limit.map_or(Length::INFINITY, Length::of_units);
            (t.id.as_str(), HalfPoint::of_units(t.x, t.y), limit)
        })
        .collect();
    let inst = Instance::new(&doc.name, &vertices, &edges, &doc.root, &terminals)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let report = validate_instance(&inst);
    if !report.ok {
        let detail = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.subject, v.message))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CliError::Invalid(detail));
    }
    Ok(inst)
}

/// Read an instance back out in canonical order. Positions are whole units
/// by the validation contract, so the division is exact.
pub fn instance_to_doc(inst: &Instance) -> InstanceDoc {
    let vertices: Vec<String> = inst.ids().to_vec();
    let edges = inst
        .edges()
        .iter()
        .map(|&(a, b)| (inst.id(a).to_string(), inst.id(b).to_string()))
        .collect();
    let terminals = inst
        .terminal_indices()
        .iter()
        .map(|&v| {
            let t = inst.terminal(v).unwrap();
            TerminalDoc {
                id: inst.id(v).to_string(),
                x: t.position.x2 / 2,
                y: t.position.y2 / 2,
                limit: t.limit.value().map(|l| l / 2),
            }
        })
        .collect();
    InstanceDoc {
        name: inst.name().to_string(),
        root: inst.id(inst.root()).to_string(),
        vertices,
        edges,
        terminals,
    }
}

pub fn serialize_instance(doc: &InstanceDoc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn solution_from_report(inst: &Instance, mode: SolveMode, report: &SolveReport) -> SolutionDoc {
    let mut vertices: Vec<VertexDoc> = (0..inst.len())
        .map(|v| {
            let p = report.embedding.position(v);
            VertexDoc { id: inst.id(v).to_string(), x2: p.x2, y2: p.y2 }
        })
        .collect();
    vertices.sort_by(|a, b| a.id.cmp(&b.id));
    let paths = inst
        .terminal_indices()
        .iter()
        .map(|&v| PathDoc {
            id: inst.id(v).to_string(),
            length2: report.path_lengths[inst.id(v)],
            limit2: inst.limit(v).value(),
        })
        .collect();
    let levels = report
        .levels
        .iter()
        .map(|l| LevelDoc {
            k: l.k,
            step2: l.step,
            dp_rounds: l.dp_rounds,
            repair_iterations: l.repair_iterations,
            cost2_after: l.cost_after,
        })
        .collect();
    SolutionDoc {
        instance: inst.name().to_string(),
        mode: mode_name(mode).to_string(),
        cost2: report.cost,
        feasible: report.feasible,
        grid_exponent: report.grid_exponent,
        start_cost2: report.start_cost,
        vertices,
        paths,
        levels,
    }
}

pub fn serialize_solution(doc: &SolutionDoc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionDoc, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn mode_name(mode: SolveMode) -> &'static str {
    match mode {
        SolveMode::Strict => "strict",
        SolveMode::Practical => "practical",
    }
}

/// Plain-text run report: the level table and the budget slack per
/// terminal. Deterministic, no wall-clock content.
pub fn render_report(inst: &Instance, mode: SolveMode, report: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance {}\n", inst.name()));
    out.push_str(&format!("mode {}\n", mode_name(mode)));
    out.push_str(&format!("vertices {}\n", inst.len()));
    out.push_str(&format!("grid exponent {}\n", report.grid_exponent));
    out.push_str(&format!("start cost2 {}\n", report.start_cost));
    out.push_str(&format!("final cost2 {} feasible {}\n", report.cost, report.feasible));
    out.push_str("\nlevels (k, step2, dp_rounds, repair_iterations, cost2_after)\n");
    for l in &report.levels {
        out.push_str(&format!(
            "  {:>2} {:>6} {:>9} {:>17} {:>11}\n",
            l.k, l.step, l.dp_rounds, l.repair_iterations, l.cost_after
        ));
    }
    out.push_str("\npaths (half-units)\n");
    for (id, len) in &report.path_lengths {
        let v = inst.index(id).expect("report ids come from the instance");
        match inst.limit(v).value() {
            Some(l) => out.push_str(&format!("  {id}: {len} of {l} (slack {})\n", l - len)),
            None => out.push_str(&format!("  {id}: {len} (unbounded)\n")),
        }
    }
    out
}

/// What `check` recomputed and compared.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CheckSummary {
    pub cost2: i64,
    pub feasible: bool,
    pub levels: usize,
}

/// The embedding a solution document claims, with the terminal pins
/// verified against the instance.
pub fn solution_embedding(inst: &Instance, doc: &SolutionDoc) -> Result<Embedding, CliError> {
    let mut positions: BTreeMap<String, HalfPoint> = BTreeMap::new();
    for v in &doc.vertices {
        if positions.insert(v.id.clone(), HalfPoint::new(v.x2, v.y2)).is_some() {
            return Err(CliError::Mismatch(format!("vertex {} listed twice", v.id)));
        }
    }
    Embedding::from_positions(inst, &positions).map_err(|e| CliError::Mismatch(e.to_string()))
}

/// Recompute cost, path lengths, and feasibility of a solution document
/// from scratch and require exact agreement with its claims.
pub fn check_solution(inst: &Instance, doc: &SolutionDoc) -> Result<CheckSummary, CliError> {
    if doc.instance != inst.name() {
        return Err(CliError::Mismatch(format!(
            "solution is for instance {}, not {}",
            doc.instance,
            inst.name()
        )));
    }
    let emb = solution_embedding(inst, doc)?;
    let recomputed = cost(inst, &emb);
    if recomputed != doc.cost2 {
        return Err(CliError::Mismatch(format!(
            "cost2 {} claimed, {} recomputed",
            doc.cost2, recomputed
        )));
    }
    let pl = path_lengths(inst, &emb);
    if pl.feasible != doc.feasible {
        return Err(CliError::Mismatch(format!(
            "feasible {} claimed, {} recomputed",
            doc.feasible, pl.feasible
        )));
    }
    if doc.paths.len() != pl.by_terminal.len() {
        return Err(CliError::Mismatch(format!(
            "{} path entries for {} terminals",
            doc.paths.len(),
            pl.by_terminal.len()
        )));
    }
    for p in &doc.paths {
        let v = inst
            .index(&p.id)
            .filter(|v| inst.is_terminal(*v))
            .ok_or_else(|| CliError::Mismatch(format!("{} is not a terminal", p.id)))?;
        let want = pl.by_terminal[&v];
        if p.length2 != want {
            return Err(CliError::Mismatch(format!(
                "path {}: length2 {} claimed, {} recomputed",
                p.id, p.length2, want
            )));
        }
        if p.limit2 != inst.limit(v).value() {
            return Err(CliError::Mismatch(format!(
                "path {}: limit2 {:?} does not match the instance",
                p.id, p.limit2
            )));
        }
    }
    Ok(CheckSummary { cost2: recomputed, feasible: pl.feasible, levels: doc.levels.len() })
}
