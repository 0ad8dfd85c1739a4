//! Lower bounds on routing and coding makespan.
//!
//! * [`deletion_routing_lb`] / [`deletion_coding_lb`]: bounds from deleting a
//!   small edge set that leaves sessions (or all cross pairs) far apart.
//! * [`MovingCut`]: integer edge lengths plus a session subset whose stretched
//!   capacity is below the subset's demand; the shortest cross distance is a
//!   coding lower bound.
//! * [`dual_to_moving_cut`]: turns a small LP dual into a verified moving cut
//!   via [`bucket`], a length stretch and [`pairwise_to_allpairs`], which in
//!   turn relies on [`padded_decomposition`].

mod allpairs;
mod bucket;
mod deletion;
mod metric;
mod moving_cut;
mod pipeline;

use thiserror::Error;

use crate::flow::FlowError;
use crate::instance::InstanceError;

pub use allpairs::{pairwise_to_allpairs, AllPairs, MAX_ALLPAIRS_ATTEMPTS};
pub use bucket::{bucket, prefix_condition_holds, Bucket};
pub use deletion::{deletion_coding_lb, deletion_routing_lb};
pub use metric::{padded_decomposition, Metric, Partition, MAX_METRIC_POINTS};
pub use moving_cut::{verify_moving_cut, CutReport, MovingCut};
pub use pipeline::{best_coding_lower_bound, coding_lower_bound, distance_cut, dual_to_moving_cut, CodingBound, CutCertificate};

#[derive(Debug, Error)]
pub enum CertError {
    #[error("sessions need unit capacities and demands")]
    NotUnit,
    #[error("pair ({source_node}, {sink_node}) is at distance {distance} without F, below {required}")]
    PairTooClose { source_node: String, sink_node: String, distance: u64, required: u64 },
    #[error("edge {0}: moving-cut lengths must be integers >= 1")]
    LengthBelowOne(usize),
    #[error("moving cut has {got} lengths for {expected} edges")]
    LengthCount { got: usize, expected: usize },
    #[error("session subset is empty or out of range")]
    BadSubset,
    #[error("sum of d_i h_i is {0}, below 1")]
    DualTooSmall(String),
    #[error("h and d have different lengths")]
    Mismatch,
    #[error("no prefix satisfies the bucketing condition")]
    NoBucket,
    #[error("diameter bound must be positive")]
    NonPositiveDiameter,
    #[error("metric has {0} points, above the limit of {MAX_METRIC_POINTS}")]
    TooManyPoints(usize),
    #[error("not a metric: {0}")]
    NotMetric(String),
    #[error("pair {pair} is at distance {distance}, below the separation {required}")]
    PairNotSeparated { pair: usize, distance: f64, required: u64 },
    #[error("separation must be at least 1")]
    ZeroSeparation,
    #[error("no attempt within {0} kept a ninth of the pairs")]
    AllPairsExhausted(usize),
    #[error("post-hoc check failed: cross distance {distance} is not above {bound}")]
    CrossDistance { distance: f64, bound: f64 },
    #[error("dual objective {0} exceeds 1/10")]
    DualTooLarge(String),
    #[error("dual is infeasible: {0}")]
    DualInfeasible(String),
    #[error("moving cut failed verification: capacity {capacity} vs demand {demand}")]
    CutInvalid { capacity: u64, demand: u64 },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("malformed moving cut: {0}")]
    Json(String),
}
