//! One row of the routing-versus-coding gap table.

use std::fmt::Write as _;

use thiserror::Error;

use crate::certificate::{best_coding_lower_bound, CertError};
use crate::gap::verify_gap;
use crate::instance::{GapInstance, UnicastInstance};
use crate::protocol::{replay_coding, replay_routing, ProtocolError, ProtocolTrace};
use crate::ratio::{self, Ratio};
use crate::route::{route, RouteConfig, RouteError};

pub const CSV_HEADER: &str = "instance,route_makespan,cut_lb,coding_ub,gap_lo,gap_hi";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Certificate(#[from] CertError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub instance: String,
    /// Makespan of the replayed routing schedule.
    pub route_makespan: u64,
    /// Largest certified routing lower bound: the farthest session, and `b`
    /// of a verified gap instance with `b <= r`.
    pub route_lb: u64,
    /// Certified coding lower bound.
    pub cut_lb: u64,
    /// Makespan of the replayed coding trace, if one was given.
    pub coding_ub: Option<u64>,
}

impl GapRow {
    /// `route_lb / coding_ub`.
    pub fn gap_lo(&self) -> Option<Ratio> {
        self.coding_ub.filter(|&c| c > 0).map(|c| Ratio::new(self.route_lb.into(), c.into()))
    }

    /// `route_makespan / cut_lb`.
    pub fn gap_hi(&self) -> Option<Ratio> {
        (self.cut_lb > 0).then(|| Ratio::new(self.route_makespan.into(), self.cut_lb.into()))
    }

    pub fn to_csv(&self) -> String {
        let opt = |r: Option<Ratio>| r.map(|x| ratio::format(&x)).unwrap_or_default();
        let mut s = String::new();
        write!(
            s,
            "{},{},{},{},{},{}",
            self.instance,
            self.route_makespan,
            self.cut_lb,
            self.coding_ub.map(|c| c.to_string()).unwrap_or_default(),
            opt(self.gap_lo()),
            opt(self.gap_hi())
        )
        .unwrap();
        s
    }
}

/// Routes the instance, certifies a coding lower bound over hop bounds up
/// to `cfg.max_hop_bound`, and replays the coding trace if present.
pub fn gap_report(
    name: &str,
    inst: &UnicastInstance,
    gap: Option<&GapInstance>,
    trace: Option<&ProtocolTrace>,
    cfg: &RouteConfig,
) -> Result<GapRow, ReportError> {
    let routed = route(inst, cfg)?;
    let route_makespan = replay_routing(inst, &routed.schedule)?.makespan();
    let mut route_lb = inst
        .sessions
        .iter()
        .filter_map(|s| inst.hop_distances_from(s.source, &[])[s.sink])
        .max()
        .unwrap_or(0);
    if let Some(g) = gap.filter(|g| g.instance == *inst) {
        let report = verify_gap(g);
        if report.passed() {
            route_lb = route_lb.max(report.routing_lower_bound.unwrap_or(0));
        }
    }
    let cut_lb = if inst.sessions.iter().all(|s| s.source == s.sink) {
        0
    } else {
        best_coding_lower_bound(inst, cfg.max_hop_bound, cfg.seed)?.0
    };
    let coding_ub = trace.map(|t| replay_coding(inst, t)).transpose()?.map(|t| t.makespan());
    Ok(GapRow { instance: name.to_string(), route_makespan, route_lb, cut_lb, coding_ub })
}
