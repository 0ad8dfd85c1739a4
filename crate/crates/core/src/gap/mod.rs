//! Gap instances: the base instance, colored high-girth bipartite graphs,
//! the graph product and the parameter recurrences.

mod base;
mod bipartite;
mod product;
mod recurrence;
mod verify;

use thiserror::Error;

pub use base::{base_edge_count, base_instance, cross_path_start, permutation_paths};
pub use bipartite::{build_colored_bipartite, moore_bound, BipartiteLimits, ColoredBipartite, ColoredEdge};
pub use product::{level_instance, product, ArcLink, CutPath, ProductInstance, ProductWiring};
pub use recurrence::{recurrence_csv, recurrence_tracker, RecurrenceRecord, MAX_TRACKED_LEVEL};
pub use verify::{verify_gap, GapReport};

#[derive(Debug, Error)]
pub enum GapError {
    #[error("bipartite degrees must be positive")]
    Degree,
    #[error("girth {girth} not reached (achieved {achieved:?}, last size {n1}+{n2}, node limit {max_nodes}): {detail}")]
    GirthNotReached { girth: usize, achieved: Option<usize>, n1: usize, n2: usize, max_nodes: usize, detail: String },
    #[error("bipartite graph does not match the factors: {0}")]
    Dimensions(String),
    #[error("bipartite graph violates the coloring: {0}")]
    Coloring(String),
    #[error("product would have up to {nodes} nodes, above the limit {max_nodes}")]
    TooLarge { nodes: u128, max_nodes: usize },
    #[error("base instance needs k >= 2, got {0}")]
    BaseTooSmall(usize),
    #[error("level {0} is not supported (physical construction covers levels 0 and 1, the tracker levels up to {MAX_TRACKED_LEVEL})")]
    Level(usize),
    #[error(transparent)]
    Instance(#[from] crate::instance::InstanceError),
}
