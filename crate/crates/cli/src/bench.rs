//! Directory benchmark: solve every instance file and tabulate the results.
//! Instances run concurrently; rows come back in file order. Wall times are
//! reported separately from the table so the table stays deterministic.

use std::path::{Path, PathBuf};
use std::time::Instant;
use steiner_embed::scaling::{solve, SolveConfig, SolveMode};

use crate::formats::parse_instance;
use crate::CliError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BenchRow {
    pub file: String,
    pub vertices: usize,
    pub terminals: usize,
    pub cost2: i64,
    pub feasible: bool,
    pub levels: usize,
    pub millis: u128,
}

/// Solve every `.json` file in the directory, one thread each.
pub fn bench_dir(dir: &Path, mode: SolveMode) -> Result<Vec<BenchRow>, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Parse(format!("no .json instances under {}", dir.display())));
    }
    let config = SolveConfig { mode, ..SolveConfig::default() };
    let results: Vec<Result<BenchRow, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                let config = config.clone();
                scope.spawn(move || bench_one(path, &config))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    results.into_iter().collect()
}

fn bench_one(path: &Path, config: &SolveConfig) -> Result<BenchRow, CliError> {
    let text = std::fs::read_to_string(path)?;
    let inst = parse_instance(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let started = Instant::now();
    let report = solve(&inst, config).map_err(CliError::from_solve)?;
    Ok(BenchRow {
        file: path.file_name().unwrap().to_string_lossy().into_owned(),
        vertices: inst.len(),
        terminals: inst.terminal_indices().len(),
        cost2: report.cost,
        feasible: report.feasible,
        levels: report.levels.len(),
        millis: started.elapsed().as_millis(),
    })
}

/// Fixed-width table of the deterministic columns.
pub fn table(rows: &[BenchRow]) -> String {
    let name_w = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    let mut out = format!(
        "{:<name_w$}  {:>8}  {:>9}  {:>10}  {:>8}  {:>6}\n",
        "file", "vertices", "terminals", "cost2", "feasible", "levels"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<name_w$}  {:>8}  {:>9}  {:>10}  {:>8}  {:>6}\n",
            r.file, r.vertices, r.terminals, r.cost2, r.feasible, r.levels
        ));
    }
    out
}
