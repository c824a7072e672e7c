use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::time::Instant;

use steiner_embed::model::validate_instance;
use steiner_embed::oracle::{brute_force_optimum, OracleBudget};
use steiner_embed::scaling::{solve, SolveConfig, SolveMode};
use steiner_embed_cli::{bench, formats, generate, render, CliError};

#[derive(Parser)]
#[command(
    name = "steiner-embed",
    about = "Embed a fixed Steiner tree topology in the rectilinear plane, \
             minimizing total length under per-terminal root path budgets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ModeArg {
    Practical,
    Strict,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> SolveMode {
        match m {
            ModeArg::Practical => SolveMode::Practical,
            ModeArg::Strict => SolveMode::Strict,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an instance and report whether it is well formed and feasible.
    Validate { file: PathBuf },
    /// Solve an instance and print `cost2=<int> feasible=<bool> levels=<int>`.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Practical)]
        mode: ModeArg,
        /// Write the solution document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Render the solved embedding here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the plain-text level report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exhaustively find the true optimum of a small instance.
    Oracle {
        file: PathBuf,
        /// Cap on grid_points^steiner before the search starts.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Recompute a solution document and require exact agreement.
    Check {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        terminals: usize,
        /// Terminal coordinates are uniform integers in [-range, range].
        #[arg(long)]
        range: i64,
        /// Probability that a terminal gets a finite budget.
        #[arg(long)]
        restricted_fraction: f64,
        /// Budgets exceed the straight root distance by at most this.
        #[arg(long)]
        slack: i64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance, optionally with a solved embedding.
    Render {
        file: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve every instance in a directory and print a table.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Practical)]
        mode: ModeArg,
    },
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn read_instance(path: &Path) -> Result<steiner_embed::model::Instance, CliError> {
    let text = std::fs::read_to_string(path)?;
    formats::parse_instance(&text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let inst = read_instance(&file)?;
            let report = validate_instance(&inst);
            if !report.feasible {
                return Err(CliError::InfeasibleInstance);
            }
            println!("ok=true feasible=true");
            Ok(())
        }
        Cmd::Solve { file, mode, out, svg, report } => {
            let inst = read_instance(&file)?;
            let mode = SolveMode::from(mode);
            let config = SolveConfig { mode, ..SolveConfig::default() };
            let started = Instant::now();
            let solved = solve(&inst, &config).map_err(CliError::from_solve)?;
            eprintln!(
                "{}: solved in {} ms",
                inst.name(),
                started.elapsed().as_millis()
            );
            if let Some(path) = &out {
                let doc = formats::solution_from_report(&inst, mode, &solved);
                std::fs::write(path, formats::serialize_solution(&doc))?;
            }
            if let Some(path) = &svg {
                std::fs::write(path, render::render_svg(&inst, Some(&solved.embedding)))?;
            }
            if let Some(path) = &report {
                std::fs::write(path, formats::render_report(&inst, mode, &solved))?;
            }
            println!(
                "cost2={} feasible={} levels={}",
                solved.cost,
                solved.feasible,
                solved.levels.len()
            );
            Ok(())
        }
        Cmd::Oracle { file, budget } => {
            let inst = read_instance(&file)?;
            let budget = OracleBudget { max_placements: budget };
            let (_, cost2) = brute_force_optimum(&inst, &budget).map_err(CliError::from_oracle)?;
            println!("cost2={cost2} feasible=true levels=0");
            Ok(())
        }
        Cmd::Check { file, solution } => {
            let inst = read_instance(&file)?;
            let text = std::fs::read_to_string(&solution)?;
            let doc = formats::parse_solution(&text)?;
            let summary = formats::check_solution(&inst, &doc)?;
            println!(
                "cost2={} feasible={} levels={}",
                summary.cost2, summary.feasible, summary.levels
            );
            Ok(())
        }
        Cmd::Gen { terminals, range, restricted_fraction, slack, seed, out } => {
            let spec = generate::GenSpec {
                n_terminals: terminals,
                coord_range: range,
                restricted_fraction,
                slack,
                seed,
            };
            let inst = generate::gen_random(&spec)?;
            let text = formats::serialize_instance(&formats::instance_to_doc(&inst));
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Cmd::Render { file, solution, out } => {
            let inst = read_instance(&file)?;
            let emb = match solution {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let doc = formats::parse_solution(&text)?;
                    Some(formats::solution_embedding(&inst, &doc)?)
                }
                None => None,
            };
            std::fs::write(out, render::render_svg(&inst, emb.as_ref()))?;
            Ok(())
        }
        Cmd::Bench { dir, mode } => {
            let rows = bench::bench_dir(&dir, SolveMode::from(mode))?;
            for r in &rows {
                eprintln!("{}: {} ms", r.file, r.millis);
            }
            print!("{}", bench::table(&rows));
            Ok(())
        }
    }
}
