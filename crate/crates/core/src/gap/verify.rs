//! Report-style verification of gap instances.

use crate::instance::{GapInstance, GapViolation};
use crate::ratio::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub violations: Vec<GapViolation>,
    /// Smallest session distance once the cut edges are removed; `None` when
    /// no session can reach its sink or there are no sessions.
    pub min_distance: Option<u64>,
    /// `b`, whenever `b <= r` makes it a routing makespan lower bound.
    pub routing_lower_bound: Option<u64>,
    /// `k (1 - (b - 1) / r)`: sessions forced to finish no earlier than `b`.
    pub forced_sessions: Ratio,
}

impl GapReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_gap(g: &GapInstance) -> GapReport {
    let p = &g.params;
    let min_distance = g.session_distances().into_iter().flatten().min();
    let b = Ratio::from_integer(p.b.into());
    let routing_lower_bound = (b <= p.r).then_some(p.b);
    let forced_sessions = if p.r > Ratio::from_integer(0.into()) {
        let one = Ratio::from_integer(1.into());
        Ratio::from_integer(p.k.into()) * (one.clone() - (b - one) / p.r.clone())
    } else {
        Ratio::from_integer(0.into())
    };
    GapReport { violations: g.violations(), min_distance, routing_lower_bound, forced_sessions }
}
