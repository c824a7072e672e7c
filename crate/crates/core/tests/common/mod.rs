//! Seeded generators shared by the integration suites. Everything is driven
//! by an explicit ChaCha stream so failures reproduce from the seed alone.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use steiner_embed::model::{
    path_lengths, validate_instance, Embedding, HalfPoint, Instance, Length,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_unit_point(rng: &mut ChaCha8Rng, range: i64) -> HalfPoint {
    HalfPoint::of_units(rng.gen_range(-range..=range), rng.gen_range(-range..=range))
}

/// Random instance whose terminals are all leaves: the root hangs off one
/// end and the remaining terminals are the leaves of a random binary tree
/// whose internal vertices are the Steiner points (degree three each, so
/// `n_terminals - 2` of them). Terminal positions are uniform integers in
/// `[-range, range]^2`; every limit starts out infinite.
pub fn random_leaf_instance(rng: &mut ChaCha8Rng, n_terminals: usize, range: i64) -> Instance {
    assert!(n_terminals >= 2);
    let mut edges: Vec<(String, String)> = Vec::new();
    // Slots are tree positions still waiting for a subtree; each split
    // turns one slot into a Steiner point with two fresh slots below it.
    let mut slots: Vec<String> = vec!["r".to_string()];
    for j in 0..n_terminals - 2 {
        let at = rng.gen_range(0..slots.len());
        let parent = slots.swap_remove(at);
        let s = format!("s{j}");
        edges.push((parent, s.clone()));
        slots.push(s.clone());
        slots.push(s);
    }
    let mut vertices: Vec<String> = vec!["r".to_string()];
    vertices.extend((0..n_terminals - 2).map(|j| format!("s{j}")));
    let mut terminals: Vec<(String, HalfPoint, Length)> =
        vec![("r".to_string(), uniform_unit_point(rng, range), Length::INFINITY)];
    for (i, parent) in slots.into_iter().enumerate() {
        let t = format!("t{i}");
        edges.push((parent, t.clone()));
        vertices.push(t.clone());
        terminals.push((t, uniform_unit_point(rng, range), Length::INFINITY));
    }
    build("leaf-random", &vertices, &edges, "r", &terminals)
}

/// Random tree in which any vertex may be a terminal, so terminals can sit
/// at internal junctions. Vertex `v0` is the root; each later vertex
/// attaches to a uniformly chosen earlier one, and every non-root vertex
/// becomes a terminal with probability one half (at least one always does).
pub fn random_mixed_instance(rng: &mut ChaCha8Rng, n_vertices: usize, range: i64) -> Instance {
    assert!(n_vertices >= 2);
    let ids: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 1..n_vertices {
        let p = rng.gen_range(0..i);
        edges.push((ids[p].clone(), ids[i].clone()));
    }
    let mut terminals: Vec<(String, HalfPoint, Length)> =
        vec![(ids[0].clone(), uniform_unit_point(rng, range), Length::INFINITY)];
    for id in ids.iter().skip(1) {
        if rng.gen_bool(0.5) {
            terminals.push((id.clone(), uniform_unit_point(rng, range), Length::INFINITY));
        }
    }
    if terminals.len() == 1 {
        terminals.push((ids[n_vertices - 1].clone(), uniform_unit_point(rng, range), Length::INFINITY));
    }
    build("mixed-random", &ids, &edges, &ids[0], &terminals)
}

fn build(
    name: &str,
    vertices: &[String],
    edges: &[(String, String)],
    root: &str,
    terminals: &[(String, HalfPoint, Length)],
) -> Instance {
    let vs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let ts: Vec<(&str, HalfPoint, Length)> =
        terminals.iter().map(|(id, p, l)| (id.as_str(), *p, *l)).collect();
    let inst = Instance::new(name, &vs, &es, root, &ts)
        .expect("generated instance is structurally sound");
    let report = validate_instance(&inst);
    assert!(report.ok, "generated instance failed validation: {:?}", report.violations);
    inst
}

/// Attach finite budgets: with probability `q` a non-root terminal gets its
/// trivial-embedding root path length plus a slack of up to `max_slack`
/// whole units; otherwise it stays unbounded. The trivial embedding attains
/// every chained distance at once, so the result is always feasible.
pub fn with_random_limits(
    rng: &mut ChaCha8Rng,
    inst: &Instance,
    q: f64,
    max_slack: i64,
) -> Instance {
    let shortest = path_lengths(inst, &Embedding::trivial(inst));
    let mut out = inst.clone();
    for (&v, &d) in &shortest.by_terminal {
        if v == inst.root() || !rng.gen_bool(q) {
            continue;
        }
        let slack = 2 * rng.gen_range(0..=max_slack);
        out = out.with_limit(inst.id(v), Length::finite(d + slack));
    }
    let report = validate_instance(&out);
    assert!(report.ok && report.feasible, "random limits must keep the instance feasible");
    out
}

/// Uniform embedding with terminals pinned and every Steiner coordinate an
/// arbitrary half-unit integer in `[-span, span]` (span in half-units).
pub fn random_embedding(rng: &mut ChaCha8Rng, inst: &Instance, span: i64) -> Embedding {
    let mut positions: BTreeMap<String, HalfPoint> = BTreeMap::new();
    for v in 0..inst.len() {
        let p = match inst.terminal(v) {
            Some(t) => t.position,
            None => HalfPoint::new(rng.gen_range(-span..=span), rng.gen_range(-span..=span)),
        };
        positions.insert(inst.id(v).to_string(), p);
    }
    Embedding::from_positions(inst, &positions).expect("terminals are pinned by construction")
}

/// The nine displacement options of one round at the given step.
pub fn displacements(step: i64) -> [(i64, i64); 9] {
    let s = step;
    [
        (0, 0),
        (-s, -s),
        (-s, 0),
        (-s, s),
        (0, -s),
        (0, s),
        (s, -s),
        (s, 0),
        (s, s),
    ]
}
