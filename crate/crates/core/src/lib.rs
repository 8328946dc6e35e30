//! Cross-entropy heuristic for minimum domination and three of its variants:
//! total domination, 2-domination and secure domination.
//!
//! The solver repeatedly samples minimal satisfying sets from a per-vertex
//! probability vector, keeps the smallest ones, and shifts the vector toward
//! the vertices they use. Criterion checks are incremental so that growing and
//! trimming a set costs time proportional to the touched neighborhoods.
//!
//! ```
//! use domce_core::{ce_run, generators, CeParams, NeighborhoodTables, VariantKind};
//!
//! let grid = generators::grid(3, 3).unwrap();
//! let tables = NeighborhoodTables::new(&grid);
//! let run = ce_run(&grid, &tables, VariantKind::Domination, &CeParams::default(), 7).unwrap();
//! assert_eq!(run.best_score(), 3);
//! ```

pub mod engine;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod sampler;
pub mod variants;

pub use engine::{blend, ce_multi, ce_run, compute_pstar, CeParams, MultiRunResult, RunResult};
pub use error::{GenerateError, GraphError, IoError, ParseError, SolveError};
pub use exact::{exact_min, ExactOutcome, ExactResult};
pub use graph::{Graph, NeighborhoodTables, Vertex};
pub use sampler::{generate_minimal_set, weighted_draw, ProbabilityVector, ScoredSet};
pub use variants::{naive_satisfied, CriterionState, VariantKind};
