//! Interpretive Structural Modeling: closure with provenance, driving and
//! dependence powers, level partitioning, the conical matrix, the leveled
//! digraph, and audits against printed reference tables.

mod audit;
mod closure;
mod conical;
mod digraph;
mod levels;
mod matrix;
mod power;
mod report;

pub use audit::{
    compare_levels, compare_matrices, parse_reference_matrix, ArithmeticFlag, CellMismatch, LevelCheck, LevelClaim,
    LevelClaims, LevelComparison, MarginAudit, MarginDiff, MarginMismatch, MatrixDiff, ReferenceMatrix, TopLevelCheck,
};
pub use closure::{is_closed, transitive_closure};
pub use conical::conical_matrix;
pub use digraph::{build_digraph, Digraph, DigraphEdge, DigraphNode};
pub use levels::{
    format_level_table, partition_levels, partition_levels_traced, LevelIteration, LevelPartition, LevelRow,
};
pub use matrix::{Origin, ReachabilityMatrix};
pub use power::{dependence_power, driving_power, rank_powers, PowerProfile};
pub use report::{run_ism, IsmReport};
