//! Seeded random instances: uniform terminals wired up by a random binary
//! arborescence, with budgets that are always satisfiable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steiner_embed::model::{validate_instance, HalfPoint, Instance, Length};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GenSpec {
    pub n_terminals: usize,
    pub coord_range: i64,
    pub restricted_fraction: f64,
    pub slack: i64,
    pub seed: u64,
}

impl GenSpec {
    fn validated(&self) -> Result<(), CliError> {
        if self.n_terminals < 2 {
            return Err(CliError::Parse("at least two terminals are required".to_string()));
        }
        if self.coord_range < 0 || self.coord_range > 1 << 20 {
            return Err(CliError::Parse("coordinate range must be in 0..=2^20".to_string()));
        }
        if !(0.0..=1.0).contains(&self.restricted_fraction) {
            return Err(CliError::Parse("restricted fraction must lie in [0, 1]".to_string()));
        }
        if self.slack < 0 {
            return Err(CliError::Parse("slack must be nonnegative".to_string()));
        }
        Ok(())
    }
}

/// Draw an instance. The root is a leaf; the remaining terminals are the
/// leaves of a random binary tree whose internal vertices become the
/// Steiner points, so every Steiner vertex has degree three. A terminal is
/// budgeted with probability `restricted_fraction`, to its straight root
/// distance plus a uniform slack; such budgets are always reachable, so the
/// result is feasible by construction.
pub fn gen_random(spec: &GenSpec) -> Result<Instance, CliError> {
    spec.validated()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_terminals;
    let width = n.to_string().len();

    // Grow the shape: each split turns an open slot into a Steiner vertex
    // with two open slots beneath it, starting from the root's single slot.
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut slots: Vec<String> = vec!["r".to_string()];
    for j in 1..=n.saturating_sub(2) {
        let at = rng.gen_range(0..slots.len());
        let parent = slots.swap_remove(at);
        let s = format!("s{j:0width$}");
        edges.push((parent, s.clone()));
        slots.push(s.clone());
        slots.push(s);
    }

    let r = (rng.gen_range(-spec.coord_range..=spec.coord_range),
             rng.gen_range(-spec.coord_range..=spec.coord_range));
    let mut terminals: Vec<(String, i64, i64, Option<i64>)> =
        vec![("r".to_string(), r.0, r.1, None)];
    for (i, parent) in slots.into_iter().enumerate() {
        let id = format!("t{:0width$}", i + 1);
        edges.push((parent, id.clone()));
        let x = rng.gen_range(-spec.coord_range..=spec.coord_range);
        let y = rng.gen_range(-spec.coord_range..=spec.coord_range);
        let limit = if rng.gen_bool(spec.restricted_fraction) {
            Some((x - r.0).abs() + (y - r.1).abs() + rng.gen_range(0..=spec.slack))
        } else {
            None
        };
        terminals.push((id, x, y, limit));
    }

    let mut vertices: Vec<String> = vec!["r".to_string()];
    vertices.extend((1..=n.saturating_sub(2)).map(|j| format!("s{j:0width$}")));
    vertices.extend(terminals.iter().skip(1).map(|(id, _, _, _)| id.clone()));

    let name = format!(
        "gen-t{}-r{}-q{}-s{}-seed{}",
        spec.n_terminals, spec.coord_range, spec.restricted_fraction, spec.slack, spec.seed
    );
    let vs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let ts: Vec<(&str, HalfPoint, Length)> = terminals
        .iter()
        .map(|(id, x, y, l)| {
            let limit = l.map_or(Length::INFINITY, Length::of_units);
            (id.as_str(), HalfPoint::of_units(*x, *y), limit)
        })
        .collect();
    let inst = Instance::new(&name, &vs, &es, "r", &ts).expect("generated structure is sound");
    let report = validate_instance(&inst);
    debug_assert!(report.ok && report.feasible);
    Ok(inst)
}
