//! From fractional flows to packet schedules.
//!
//! [`round_paths`] samples one path per demand unit from the LP support,
//! [`schedule`] turns paths into store-and-forward departures, and [`route`]
//! drives both over a doubling sequence of hop bounds.

mod rounding;
mod scheduler;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{solve_exact, solve_mwu, FlowError, FlowSolution};
use crate::instance::{EdgeId, InstanceError, Path, UnicastInstance};
use crate::ratio::{self, Ratio};

pub use rounding::{round_paths, PathAssignment};
pub use scheduler::{schedule, SCHEDULER_BETA};

#[derive(Debug, Error)]
pub enum RouteError {
    #[error("rounding failed: greedy congestion {congestion} exceeds {limit}")]
    Rounding { congestion: String, limit: String, assignment: Box<PathAssignment> },
    #[error("flow value is zero; nothing to round")]
    ZeroFlow,
    #[error("no hop bound up to {max_hop_bound} reaches z >= 1/10 (best z = {best_z})")]
    NoHopBound { max_hop_bound: usize, best_z: String, best: Box<FlowSolution> },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("malformed schedule: {0}")]
    Schedule(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledPacket {
    pub session: usize,
    pub copy: usize,
    pub path: Path,
    /// Round in which each hop is traversed, strictly increasing, from 1.
    pub departures: Vec<u64>,
}

impl ScheduledPacket {
    pub fn completion(&self) -> u64 {
        self.departures.last().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub packets: Vec<ScheduledPacket>,
    pub makespan: u64,
}

impl Schedule {
    pub fn new(packets: Vec<ScheduledPacket>) -> Schedule {
        let makespan = packets.iter().map(|p| p.completion()).max().unwrap_or(0);
        Schedule { packets, makespan }
    }

    /// Largest number of packets on one edge in one round, over capacity;
    /// at most one for schedules produced by [`schedule`].
    pub fn peak_edge_load(&self, inst: &UnicastInstance) -> Ratio {
        let mut count: std::collections::HashMap<(u64, EdgeId), u64> = std::collections::HashMap::new();
        for p in &self.packets {
            for (&e, &r) in p.path.edges.iter().zip(&p.departures) {
                *count.entry((r, e)).or_default() += 1;
            }
        }
        count
            .into_iter()
            .map(|((_, e), c)| ratio::frac(c as i64, inst.edges[e].capacity as i64))
            .max()
            .unwrap_or_else(|| ratio::int(0))
    }

    pub fn to_json(&self, inst: &UnicastInstance) -> String {
        let file = ScheduleFile {
            makespan: self.makespan,
            packets: self
                .packets
                .iter()
                .map(|p| PacketEntry {
                    session: p.session,
                    copy: p.copy,
                    path: inst.path_names(&p.path),
                    edges: p.path.edges.clone(),
                    departures: p.departures.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).unwrap()
    }

    pub fn from_json(inst: &UnicastInstance, text: &str) -> Result<Schedule, RouteError> {
        let file: ScheduleFile = serde_json::from_str(text).map_err(|e| RouteError::Schedule(e.to_string()))?;
        let mut packets = Vec::with_capacity(file.packets.len());
        for p in file.packets {
            let first = p.path.first().ok_or_else(|| RouteError::Schedule("empty path".into()))?;
            let start = inst.node_id(first)?;
            let path = Path::from_edges(inst, start, &p.edges)?;
            if inst.path_names(&path) != p.path {
                return Err(RouteError::Schedule(format!("path nodes and edges disagree for session {}", p.session)));
            }
            if p.departures.len() != path.hops() {
                return Err(RouteError::Schedule(format!("session {} copy {}: one departure per hop expected", p.session, p.copy)));
            }
            packets.push(ScheduledPacket { session: p.session, copy: p.copy, path, departures: p.departures });
        }
        Ok(Schedule::new(packets))
    }
}

#[derive(Serialize, Deserialize)]
struct PacketEntry {
    session: usize,
    copy: usize,
    path: Vec<String>,
    edges: Vec<EdgeId>,
    departures: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    makespan: u64,
    packets: Vec<PacketEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Mwu,
    /// Exact LP, falling back to multiplicative weights above the path limit.
    Exact { path_limit: usize },
}

#[derive(Clone, Debug)]
pub struct RouteConfig {
    pub max_hop_bound: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub solver: Solver,
}

impl RouteConfig {
    pub fn new(max_hop_bound: usize, seed: u64) -> RouteConfig {
        RouteConfig { max_hop_bound, epsilon: 0.1, seed, solver: Solver::Mwu }
    }
}

/// Result of [`route`].
#[derive(Clone, Debug)]
pub struct Routed {
    pub schedule: Schedule,
    pub hop_bound: usize,
    pub solution: Option<FlowSolution>,
    pub assignment: PathAssignment,
}

/// Minimum LP value at which a hop bound is accepted.
pub fn acceptance_threshold() -> Ratio {
    ratio::frac(1, 10)
}

pub(crate) fn solve_with(inst: &UnicastInstance, hop_bound: usize, cfg: &RouteConfig) -> Result<FlowSolution, FlowError> {
    match cfg.solver {
        Solver::Mwu => solve_mwu(inst, hop_bound, cfg.epsilon),
        Solver::Exact { path_limit } => match solve_exact(inst, hop_bound, path_limit) {
            Err(FlowError::PathLimit { .. }) => solve_mwu(inst, hop_bound, cfg.epsilon),
            other => other,
        },
    }
}

/// Hop bounds probed by [`route`]: powers of two up to `max`, then `max`.
pub fn doubling_sequence(max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut t = 1;
    while t <= max {
        out.push(t);
        t *= 2;
    }
    if out.last() != Some(&max) && max > 0 {
        out.push(max);
    }
    out
}

/// Solves at `T = 1, 2, 4, ...` up to the configured maximum, stops at the
/// first `T` with `z >= 1/10`, rounds and schedules. Sessions with
/// `s_i = t_i` are delivered at time zero.
pub fn route(inst: &UnicastInstance, cfg: &RouteConfig) -> Result<Routed, RouteError> {
    if inst.sessions.iter().all(|s| s.source == s.sink) {
        let paths: Vec<Vec<Path>> = inst.sessions.iter().map(|s| vec![Path::trivial(s.source); s.demand as usize]).collect();
        let assignment = PathAssignment::from_paths(inst, paths);
        let schedule = schedule(inst, &assignment, cfg.seed);
        return Ok(Routed { schedule, hop_bound: 0, solution: None, assignment });
    }
    let threshold = acceptance_threshold();
    let mut last: Option<FlowSolution> = None;
    for t in doubling_sequence(cfg.max_hop_bound) {
        let sol = solve_with(inst, t, cfg)?;
        if sol.z >= threshold {
            let assignment = round_paths(inst, &sol, cfg.seed)?;
            let schedule = schedule(inst, &assignment, cfg.seed);
            return Ok(Routed { schedule, hop_bound: t, solution: Some(sol), assignment });
        }
        last = Some(sol);
    }
    let best = match last {
        Some(s) => s,
        None => solve_with(inst, 0, cfg)?,
    };
    Err(RouteError::NoHopBound { max_hop_bound: cfg.max_hop_bound, best_z: ratio::format(&best.z), best: Box::new(best) })
}
