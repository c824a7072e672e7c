//! Exact embedding of a fixed Steiner tree topology in the rectilinear
//! plane, with per-terminal budgets on root path lengths.
//!
//! The input fixes a tree over terminals and Steiner vertices, pins every
//! terminal to a point on the integer grid, and bounds how long the tree
//! path from the root to selected terminals may get. The solver places the
//! Steiner vertices to minimize total L1 edge length without breaking any
//! budget. All arithmetic is exact: coordinates live on a half-unit integer
//! grid, which is fine enough to contain an optimal placement for every
//! integral instance.
//!
//! Modules:
//! - [`model`]: instances, embeddings, validation, costs and path lengths.
//! - [`components`]: axis-aligned component structure of an embedding and
//!   the movement calculus on it.
//! - [`dp`]: one displacement round of the budgeted tree dynamic program,
//!   and local search built from such rounds.
//! - [`scaling`]: the full solver, running local search over a shrinking
//!   displacement step.
//! - [`oracle`]: exhaustive reference optimum for small instances.
//! - [`samples`]: built-in example instances with known optima.

pub mod components;
pub mod dp;
pub mod model;
pub mod oracle;
pub mod samples;
pub mod scaling;
