//! Built-in example instances. The demo nets double as regression fixtures:
//! their optimal costs and tight path lengths are known exactly, and the
//! checked-in documents under `instances/` are generated from these
//! constructors.

use std::collections::BTreeMap;

use crate::model::{Embedding, HalfPoint, Instance, Length};

fn build(
    name: &str,
    vertices: &[&str],
    edges: &[(&str, &str)],
    root: &str,
    terminals: &[(&str, i64, i64, Option<i64>)],
) -> Instance {
    let terms: Vec<(&str, HalfPoint, Length)> = terminals
        .iter()
        .map(|&(id, x, y, l)| {
            (id, HalfPoint::of_units(x, y), l.map_or(Length::INFINITY, Length::of_units))
        })
        .collect();
    Instance::new(name, vertices, edges, root, &terms).expect("sample instance is well formed")
}

fn embed(inst: &Instance, steiner: &[(&str, i64, i64)]) -> Embedding {
    let mut map: BTreeMap<String, HalfPoint> = BTreeMap::new();
    for &t in inst.terminal_indices() {
        map.insert(inst.id(t).to_string(), inst.terminal(t).unwrap().position);
    }
    for &(id, x2, y2) in steiner {
        map.insert(id.to_string(), HalfPoint::new(x2, y2));
    }
    Embedding::from_positions(inst, &map).expect("sample embedding is well formed")
}

/// Twelve vertices, seven terminals, two of them budgeted. Small enough for
/// exhaustive checks, rich enough that the budgets genuinely bind: the free
/// optimum costs 11 units while the budget-respecting optimum costs 12.
pub fn demo_net_small() -> Instance {
    build(
        "demo-small",
        &["r", "u1", "u2", "u3", "u4", "t1", "t2", "s1", "s2", "s3", "s4", "s5"],
        &[
            ("r", "s1"),
            ("s1", "u1"),
            ("s1", "s4"),
            ("s4", "s3"),
            ("s3", "s2"),
            ("s2", "u2"),
            ("s2", "t1"),
            ("s3", "u3"),
            ("s4", "s5"),
            ("s5", "t2"),
            ("s5", "u4"),
        ],
        "r",
        &[
            ("r", 0, 3, None),
            ("u1", 0, 0, None),
            ("u2", 2, 0, None),
            ("u3", 2, 1, None),
            ("u4", 3, 0, None),
            ("t1", 1, 0, Some(5)),
            ("t2", 3, 3, Some(6)),
        ],
    )
}

/// Optimal embedding of `demo_net_small` under its budgets: cost 24
/// half-units, both budgets tight.
pub fn demo_net_small_budget_optimum() -> Embedding {
    embed(
        &demo_net_small(),
        &[("s1", 0, 3), ("s2", 3, 0), ("s3", 3, 2), ("s4", 3, 3), ("s5", 6, 3)],
    )
}

/// Optimal embedding of `demo_net_small` with the budgets dropped: cost 22
/// half-units, but t1's path runs 12 > 10 and t2's 14 > 12.
pub fn demo_net_small_free_optimum() -> Embedding {
    embed(
        &demo_net_small(),
        &[("s1", 0, 2), ("s2", 4, 0), ("s3", 4, 2), ("s4", 4, 2), ("s5", 6, 2)],
    )
}

/// Twenty-six vertices, fourteen terminals, three budgeted. The free
/// optimum costs 35 units; the budgets push it to 37.5, which needs
/// half-integral Steiner coordinates.
pub fn demo_net_large() -> Instance {
    build(
        "demo-large",
        &[
            "r", "t01", "t02", "t03", "t04", "a", "b", "t05", "t06", "t07", "t08", "c",
            "t09", "t10", "s01", "s02", "s03", "s04", "s05", "s06", "s07", "s08", "s09",
            "s10", "s11", "s12",
        ],
        &[
            ("r", "s09"),
            ("t01", "s09"),
            ("s09", "s11"),
            ("t02", "s11"),
            ("s11", "s01"),
            ("t03", "s01"),
            ("s01", "s08"),
            ("s08", "s02"),
            ("s02", "t04"),
            ("s02", "a"),
            ("s08", "s10"),
            ("s10", "s03"),
            ("s10", "t09"),
            ("b", "s03"),
            ("s03", "s04"),
            ("s04", "t05"),
            ("s04", "s05"),
            ("s05", "t06"),
            ("s05", "s06"),
            ("s06", "t07"),
            ("s06", "s12"),
            ("s07", "s12"),
            ("s12", "t10"),
            ("s07", "t08"),
            ("s07", "c"),
        ],
        "r",
        &[
            ("r", 0, 0, None),
            ("t01", 0, 4, None),
            ("t02", 1, 5, None),
            ("t03", 2, 6, None),
            ("t04", 6, 7, None),
            ("a", 3, 7, Some(10)),
            ("b", 3, 1, Some(11)),
            ("t05", 4, -1, None),
            ("t06", 7, -1, None),
            ("t07", 9, -1, None),
            ("t08", 9, 2, None),
            ("c", 7, 2, Some(20)),
            ("t09", 6, 2, None),
            ("t10", 10, 1, None),
        ],
    )
}

/// Optimal embedding of `demo_net_large` under its budgets: cost 75
/// half-units with all three budgets tight. Four Steiner vertices sit on
/// half-integral coordinates.
pub fn demo_net_large_budget_optimum() -> Embedding {
    embed(
        &demo_net_large(),
        &[
            ("s01", 4, 9),
            ("s02", 6, 14),
            ("s03", 6, 2),
            ("s04", 8, -2),
            ("s05", 14, -2),
            ("s06", 14, -2),
            ("s07", 14, 4),
            ("s08", 6, 9),
            ("s09", 0, 8),
            ("s10", 6, 4),
            ("s11", 2, 9),
            ("s12", 14, 2),
        ],
    )
}

/// Optimal embedding of `demo_net_large` with budgets dropped: cost 70
/// half-units.
pub fn demo_net_large_free_optimum() -> Embedding {
    embed(
        &demo_net_large(),
        &[
            ("s01", 4, 10),
            ("s02", 8, 14),
            ("s03", 8, 2),
            ("s04", 8, -2),
            ("s05", 14, -2),
            ("s06", 18, -2),
            ("s07", 18, 4),
            ("s08", 8, 10),
            ("s09", 0, 8),
            ("s10", 8, 4),
            ("s11", 2, 10),
            ("s12", 18, 2),
        ],
    )
}

/// Twelve vertices arranged so the axis component structure is interesting:
/// three Steiner vertices share the line y = 3 and carry two terminals'
/// paths in and out on the same side.
pub fn component_demo_net() -> Instance {
    build(
        "demo-components",
        &["r", "t1", "t2", "t3", "t4", "t5", "t6", "s1", "s2", "s3", "s4", "s5"],
        &[
            ("r", "s2"),
            ("s2", "t3"),
            ("s2", "s3"),
            ("s3", "s1"),
            ("s1", "t1"),
            ("s1", "t2"),
            ("s3", "s4"),
            ("s4", "t6"),
            ("s4", "s5"),
            ("s5", "t4"),
            ("s5", "t5"),
        ],
        "r",
        &[
            ("r", 2, 1, None),
            ("t1", 0, 2, None),
            ("t2", 1, 5, None),
            ("t3", 4, 0, None),
            ("t4", 5, 4, None),
            ("t5", 7, 5, None),
            ("t6", 8, 1, None),
        ],
    )
}

/// A hand-placed embedding of `component_demo_net` (cost 44 half-units)
/// whose y components include {s1, s3, s4} at y = 6.
pub fn component_demo_embedding() -> Embedding {
    embed(
        &component_demo_net(),
        &[("s1", 2, 6), ("s2", 8, 2), ("s3", 8, 6), ("s4", 12, 6), ("s5", 12, 8)],
    )
}
