//! Hop-bounded maximum concurrent flow.
//!
//! The LP: maximise `z` subject to every session `i` receiving at least
//! `z * d_i` units over simple paths with at most `T` hops, and every edge
//! carrying at most `T * c_e`. Its dual assigns lengths `l_e >= 0` to edges
//! and `h_i >= 0` to sessions with `sum_i d_i h_i >= 1` and every allowed path
//! of session `i` at least `h_i` long; the dual objective is
//! `T * sum_e c_e l_e`.
//!
//! Sessions with `s_i = t_i` impose no constraint and get a zero-hop path.
//! When every session is of that kind the LP is unbounded and `z` is
//! reported as 1.

mod exact;
mod mwu;
pub mod paths;
pub mod simplex;

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{InstanceError, Path, UnicastInstance, Violation};
use crate::ratio::{self, JsonRatio, Ratio};

pub use exact::{solve_exact, DEFAULT_PATH_LIMIT};
pub use mwu::solve_mwu;
pub use paths::{enumerate_paths, hop_bounded_shortest_path};

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("epsilon {epsilon} is too small for {edges} edges (length scale overflows)")]
    EpsilonTooSmall { epsilon: f64, edges: usize },
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("path enumeration exceeded the limit of {limit} paths")]
    PathLimit { limit: usize },
    #[error("exact LP solve failed: {0}")]
    Simplex(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("malformed flow solution: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowStatus {
    Feasible,
    /// Some session has no path within the hop bound, so `z = 0`.
    HopInfeasible,
}

impl FlowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowStatus::Feasible => "feasible",
            FlowStatus::HopInfeasible => "hop-infeasible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFlow {
    pub session: usize,
    pub path: Path,
    pub value: Ratio,
}

/// Dual solution: edge lengths and per-session thresholds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub lengths: Vec<Ratio>,
    pub h: Vec<Ratio>,
}

impl Dual {
    /// `T * sum_e c_e l_e`.
    pub fn objective(&self, inst: &UnicastInstance, hop_bound: usize) -> Ratio {
        let mut acc = Ratio::zero();
        for (e, l) in inst.edges.iter().zip(&self.lengths) {
            acc += l * Ratio::from_integer(e.capacity.into());
        }
        acc * Ratio::from_integer(hop_bound.into())
    }

    pub fn demand_weighted_h(&self, inst: &UnicastInstance) -> Ratio {
        inst.sessions
            .iter()
            .zip(&self.h)
            .fold(Ratio::zero(), |acc, (s, h)| acc + h * Ratio::from_integer(s.demand.into()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowSolution {
    pub z: Ratio,
    pub hop_bound: usize,
    pub epsilon: Option<f64>,
    pub status: FlowStatus,
    pub flows: Vec<PathFlow>,
    pub dual: Dual,
}

impl FlowSolution {
    /// Total flow per session.
    pub fn session_totals(&self, k: usize) -> Vec<Ratio> {
        let mut out = vec![Ratio::zero(); k];
        for f in &self.flows {
            out[f.session] += &f.value;
        }
        out
    }

    /// Flow on each edge.
    pub fn edge_loads(&self, m: usize) -> Vec<Ratio> {
        let mut out = vec![Ratio::zero(); m];
        for f in &self.flows {
            for &e in &f.path.edges {
                out[e] += &f.value;
            }
        }
        out
    }

    /// Whether the primal part respects hop bound, capacities and `z`.
    pub fn primal_feasible(&self, inst: &UnicastInstance) -> bool {
        let t = Ratio::from_integer(self.hop_bound.into());
        let paths_ok = self.flows.iter().all(|f| {
            let s = &inst.sessions[f.session];
            !f.value.is_negative()
                && f.path.hops() <= self.hop_bound
                && f.path.is_walk_in(inst)
                && f.path.is_simple()
                && f.path.source() == s.source
                && f.path.sink() == s.sink
        });
        let loads_ok = self
            .edge_loads(inst.edge_count())
            .iter()
            .zip(&inst.edges)
            .all(|(l, e)| *l <= &t * Ratio::from_integer(e.capacity.into()));
        let totals = self.session_totals(inst.session_count());
        let demand_ok = inst.sessions.iter().zip(&totals).all(|(s, got)| {
            s.source == s.sink || *got >= &self.z * Ratio::from_integer(s.demand.into())
        });
        paths_ok && loads_ok && demand_ok
    }

    pub fn to_json(&self, inst: &UnicastInstance) -> String {
        serde_json::to_string_pretty(&FlowFile::from_solution(self, inst)).unwrap()
    }

    pub fn from_json(inst: &UnicastInstance, text: &str) -> Result<FlowSolution, FlowError> {
        let f: FlowFile = serde_json::from_str(text).map_err(|e| FlowError::Json(e.to_string()))?;
        f.into_solution(inst)
    }
}

#[derive(Serialize, Deserialize)]
struct FlowEntry {
    session: usize,
    path: Vec<String>,
    edges: Vec<usize>,
    value: JsonRatio,
}

#[derive(Serialize, Deserialize)]
struct DualFile {
    lengths: BTreeMap<usize, JsonRatio>,
    h: Vec<JsonRatio>,
}

#[derive(Serialize, Deserialize)]
struct FlowFile {
    z: JsonRatio,
    #[serde(rename = "T")]
    t: usize,
    epsilon: Option<f64>,
    status: FlowStatus,
    flows: Vec<FlowEntry>,
    dual: DualFile,
}

impl FlowFile {
    fn from_solution(s: &FlowSolution, inst: &UnicastInstance) -> FlowFile {
        FlowFile {
            z: JsonRatio(s.z.clone()),
            t: s.hop_bound,
            epsilon: s.epsilon,
            status: s.status,
            flows: s
                .flows
                .iter()
                .map(|f| FlowEntry {
                    session: f.session,
                    path: inst.path_names(&f.path),
                    edges: f.path.edges.clone(),
                    value: JsonRatio(f.value.clone()),
                })
                .collect(),
            dual: DualFile {
                lengths: s.dual.lengths.iter().enumerate().map(|(e, l)| (e, JsonRatio(l.clone()))).collect(),
                h: s.dual.h.iter().map(|h| JsonRatio(h.clone())).collect(),
            },
        }
    }

    fn into_solution(self, inst: &UnicastInstance) -> Result<FlowSolution, FlowError> {
        let mut flows = Vec::with_capacity(self.flows.len());
        for f in self.flows {
            if f.session >= inst.session_count() {
                return Err(FlowError::Json(format!("session {} out of range", f.session)));
            }
            let start = inst.sessions[f.session].source;
            let path = Path::from_edges(inst, start, &f.edges)?;
            if inst.path_names(&path) != f.path {
                return Err(FlowError::Json(format!("path nodes and edges disagree for session {}", f.session)));
            }
            flows.push(PathFlow { session: f.session, path, value: f.value.0 });
        }
        let mut lengths = vec![Ratio::zero(); inst.edge_count()];
        for (e, l) in self.dual.lengths {
            if e >= lengths.len() {
                return Err(FlowError::Json(format!("edge {e} out of range")));
            }
            lengths[e] = l.0;
        }
        if self.dual.h.len() != inst.session_count() {
            return Err(FlowError::Json("h has the wrong number of entries".into()));
        }
        Ok(FlowSolution {
            z: self.z.0,
            hop_bound: self.t,
            epsilon: self.epsilon,
            status: self.status,
            flows,
            dual: Dual { lengths, h: self.dual.h.into_iter().map(|h| h.0).collect() },
        })
    }
}

/// Outcome of [`check_dual_feasible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub feasible: bool,
    pub objective: Ratio,
    pub demand_weighted_h: Ratio,
    pub violation: Option<DualViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualViolation {
    NegativeLength(usize),
    NegativeThreshold(usize),
    DemandSum(Ratio),
    /// A path of `session` within the hop bound shorter than `h_session`.
    ShortPath { session: usize, path: Path, length: Ratio, h: Ratio },
}

/// Exact dual feasibility: nonnegativity, `sum_i d_i h_i >= 1`, and for every
/// session the shortest path within the hop bound is at least `h_i` long.
pub fn check_dual_feasible(inst: &UnicastInstance, hop_bound: usize, dual: &Dual) -> DualCheck {
    let objective = dual.objective(inst, hop_bound);
    let dh = dual.demand_weighted_h(inst);
    let fail = |v| DualCheck { feasible: false, objective: objective.clone(), demand_weighted_h: dh.clone(), violation: Some(v) };
    if let Some(e) = dual.lengths.iter().position(|l| l.is_negative()) {
        return fail(DualViolation::NegativeLength(e));
    }
    if let Some(i) = dual.h.iter().position(|h| h.is_negative()) {
        return fail(DualViolation::NegativeThreshold(i));
    }
    if dh < Ratio::one() {
        return fail(DualViolation::DemandSum(dh.clone()));
    }
    for (i, s) in inst.sessions.iter().enumerate() {
        if let Some((path, length)) = hop_bounded_shortest_path(inst, &dual.lengths, s.source, s.sink, hop_bound) {
            if length < dual.h[i] {
                return fail(DualViolation::ShortPath { session: i, path, length, h: dual.h[i].clone() });
            }
        }
    }
    DualCheck { feasible: true, objective, demand_weighted_h: dh, violation: None }
}

/// Turns edge lengths into a normalised dual: `h_i` is the hop-bounded
/// shortest-path length of session `i`, and `(l, h)` is rescaled so that
/// `sum_i d_i h_i = 1`. Needs every session to be hop-feasible and the
/// weighted sum to be positive.
pub(crate) fn normalize_dual(inst: &UnicastInstance, hop_bound: usize, lengths: Vec<Ratio>) -> Dual {
    let mut h = Vec::with_capacity(inst.session_count());
    for s in &inst.sessions {
        let (_, len) = hop_bounded_shortest_path(inst, &lengths, s.source, s.sink, hop_bound)
            .expect("session is hop-feasible");
        h.push(len);
    }
    let mut dual = Dual { lengths, h };
    let total = dual.demand_weighted_h(inst);
    assert!(total.is_positive(), "dual normalisation needs positive path lengths");
    for l in dual.lengths.iter_mut().chain(dual.h.iter_mut()) {
        *l = &*l / &total;
    }
    dual
}

/// Handles the cases that need no optimisation: no nontrivial session, or a
/// session without any path within the hop bound.
pub(crate) fn degenerate_solution(inst: &UnicastInstance, hop_bound: usize, epsilon: Option<f64>) -> Option<FlowSolution> {
    let m = inst.edge_count();
    let k = inst.session_count();
    let nontrivial: Vec<usize> = (0..k).filter(|&i| inst.sessions[i].source != inst.sessions[i].sink).collect();
    let trivial_flows = |z: &Ratio| -> Vec<PathFlow> {
        inst.sessions
            .iter()
            .enumerate()
            .filter(|(_, s)| s.source == s.sink)
            .map(|(i, s)| PathFlow { session: i, path: Path::trivial(s.source), value: z * Ratio::from_integer(s.demand.into()) })
            .collect()
    };
    if nontrivial.is_empty() {
        let z = Ratio::one();
        return Some(FlowSolution {
            flows: trivial_flows(&z),
            z,
            hop_bound,
            epsilon,
            status: FlowStatus::Feasible,
            dual: Dual { lengths: vec![Ratio::zero(); m], h: vec![Ratio::zero(); k] },
        });
    }
    for &i in &nontrivial {
        let s = &inst.sessions[i];
        let reach = inst.hop_distances_from(s.source, &[])[s.sink];
        if reach.is_none_or(|d| d as usize > hop_bound) {
            let mut h = vec![Ratio::zero(); k];
            h[i] = ratio::frac(1, s.demand as i64);
            let z = Ratio::zero();
            return Some(FlowSolution {
                flows: Vec::new(),
                z,
                hop_bound,
                epsilon,
                status: FlowStatus::HopInfeasible,
                dual: Dual { lengths: vec![Ratio::zero(); m], h },
            });
        }
    }
    None
}

pub(crate) fn require_valid(inst: &UnicastInstance) -> Result<(), FlowError> {
    let v = inst.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(FlowError::Invalid(v))
    }
}
