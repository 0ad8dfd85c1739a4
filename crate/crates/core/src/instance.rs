//! Unicast instances, gap instances and graph distances.

use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::cmp::Reverse;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratio::{JsonRatio, Ratio};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub capacity: u64,
}

impl Edge {
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub source: NodeId,
    pub sink: NodeId,
    pub demand: u64,
}

/// A walk given by both its node sequence and its edge ids, so parallel
/// edges stay distinguishable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(node: NodeId) -> Path {
        Path { nodes: vec![node], edges: Vec::new() }
    }

    pub fn hops(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn sink(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.nodes.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Builds a path from a start node and consecutive edge ids.
    pub fn from_edges(inst: &UnicastInstance, start: NodeId, edges: &[EdgeId]) -> Result<Path, InstanceError> {
        let mut nodes = vec![start];
        let mut at = start;
        for &e in edges {
            let edge = inst.edges.get(e).ok_or(InstanceError::UnknownEdge(e))?;
            if edge.u != at && edge.v != at {
                return Err(InstanceError::BrokenPath { edge: e, node: inst.name(at).to_string() });
            }
            at = edge.other(at);
            nodes.push(at);
        }
        Ok(Path { nodes, edges: edges.to_vec() })
    }

    /// Checks that consecutive nodes are joined by the listed edges.
    pub fn is_walk_in(&self, inst: &UnicastInstance) -> bool {
        if self.nodes.len() != self.edges.len() + 1 || self.nodes.iter().any(|&v| v >= inst.node_count()) {
            return false;
        }
        self.edges.iter().enumerate().all(|(j, &e)| {
            inst.edges.get(e).is_some_and(|edge| {
                let (a, b) = (self.nodes[j], self.nodes[j + 1]);
                (edge.u == a && edge.v == b) || (edge.u == b && edge.v == a)
            })
        })
    }

    /// Removes cycles, keeping the first visit of every node.
    pub fn simplify(&self) -> Path {
        let mut nodes: Vec<NodeId> = Vec::with_capacity(self.nodes.len());
        let mut edges: Vec<EdgeId> = Vec::with_capacity(self.edges.len());
        let mut pos: HashMap<NodeId, usize> = HashMap::new();
        for (j, &v) in self.nodes.iter().enumerate() {
            if let Some(&p) = pos.get(&v) {
                for w in nodes.drain(p + 1..) {
                    pos.remove(&w);
                }
                edges.truncate(p);
            } else {
                if j > 0 {
                    edges.push(self.edges[j - 1]);
                }
                pos.insert(v, nodes.len());
                nodes.push(v);
            }
        }
        Path { nodes, edges }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("node index {0} out of range")]
    NodeOutOfRange(NodeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} does not touch node {node:?}")]
    BrokenPath { edge: EdgeId, node: String },
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("negative length on edge {0}")]
    NegativeLength(EdgeId),
    #[error("length vector has {got} entries, expected {expected}")]
    LengthCount { got: usize, expected: usize },
    #[error("empty session subset")]
    EmptySubset,
    #[error("session index {0} out of range")]
    SessionOutOfRange(usize),
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("malformed instance JSON: {0}")]
    Json(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    NoSessions,
    NotConnected,
    UnknownNode(String),
    DuplicateNode(String),
    ZeroCapacity(EdgeId),
    ZeroDemand(usize),
    SelfLoop(EdgeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "no nodes"),
            Violation::NoSessions => write!(f, "no sessions (k >= 1 required)"),
            Violation::NotConnected => write!(f, "not connected"),
            Violation::UnknownNode(n) => write!(f, "unknown node {n:?}"),
            Violation::DuplicateNode(n) => write!(f, "duplicate node {n:?}"),
            Violation::ZeroCapacity(e) => write!(f, "edge {e}: capacity >= 1 required"),
            Violation::ZeroDemand(i) => write!(f, "session {i}: demand >= 1 required"),
            Violation::SelfLoop(e) => write!(f, "edge {e} is a self-loop"),
        }
    }
}

/// Lengths usable by Dijkstra: exact, totally ordered and additive.
pub trait Length: Clone + Ord + Zero + Add<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T>> Length for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicastInstance {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    pub edges: Vec<Edge>,
    pub sessions: Vec<Session>,
    adj: Vec<Vec<(NodeId, EdgeId)>>,
}

impl UnicastInstance {
    pub fn new(
        names: Vec<String>,
        edges: Vec<Edge>,
        sessions: Vec<Session>,
    ) -> Result<UnicastInstance, InstanceError> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(InstanceError::DuplicateNode(name.clone()));
            }
        }
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(InstanceError::NodeOutOfRange(x));
                }
            }
        }
        for s in &sessions {
            for x in [s.source, s.sink] {
                if x >= n {
                    return Err(InstanceError::NodeOutOfRange(x));
                }
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if e.u != e.v {
                adj[e.v].push((e.u, id));
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(UnicastInstance { names, index, edges, sessions, adj })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn session_count(&self) -> usize {
        self.sessions.len()
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId, InstanceError> {
        self.index.get(name).copied().ok_or_else(|| InstanceError::UnknownNode(name.to_string()))
    }

    /// Neighbours of `v` with the connecting edge, sorted by (neighbour, edge).
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adj[v]
    }

    pub fn total_demand(&self) -> u64 {
        self.sessions.iter().map(|s| s.demand).sum()
    }

    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.nodes.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.names.is_empty() {
            out.push(Violation::NoNodes);
        }
        for (id, e) in self.edges.iter().enumerate() {
            if e.capacity == 0 {
                out.push(Violation::ZeroCapacity(id));
            }
            if e.u == e.v {
                out.push(Violation::SelfLoop(id));
            }
        }
        if self.sessions.is_empty() {
            out.push(Violation::NoSessions);
        }
        for (i, s) in self.sessions.iter().enumerate() {
            if s.demand == 0 {
                out.push(Violation::ZeroDemand(i));
            }
        }
        if !self.names.is_empty() && self.hop_distances_from(0, &[]).iter().any(|d| d.is_none()) {
            out.push(Violation::NotConnected);
        }
        out
    }

    fn check_node(&self, v: NodeId) -> Result<(), InstanceError> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(InstanceError::NodeOutOfRange(v))
        }
    }

    /// BFS hop distances from `source` in the graph with `removed` edges deleted.
    pub fn hop_distances_from(&self, source: NodeId, removed: &[EdgeId]) -> Vec<Option<u64>> {
        let mut gone = vec![false; self.edges.len()];
        for &e in removed {
            if e < gone.len() {
                gone[e] = true;
            }
        }
        self.hop_distances_masked(source, &gone)
    }

    pub(crate) fn hop_distances_masked(&self, source: NodeId, gone: &[bool]) -> Vec<Option<u64>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &(y, e) in &self.adj[x] {
                if !gone[e] && dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Hop distance between `u` and `v` after deleting `removed`; `None` is infinity.
    pub fn hop_distance(&self, removed: &[EdgeId], u: NodeId, v: NodeId) -> Result<Option<u64>, InstanceError> {
        self.check_node(u)?;
        self.check_node(v)?;
        Ok(self.hop_distances_from(u, removed)[v])
    }

    /// Dijkstra distances from `source` under per-edge `lengths`.
    pub fn weighted_distances_from<W: Length>(
        &self,
        lengths: &[W],
        source: NodeId,
    ) -> Result<Vec<Option<W>>, InstanceError> {
        self.check_node(source)?;
        if lengths.len() != self.edges.len() {
            return Err(InstanceError::LengthCount { got: lengths.len(), expected: self.edges.len() });
        }
        if let Some(e) = lengths.iter().position(|l| *l < W::zero()) {
            return Err(InstanceError::NegativeLength(e));
        }
        let mut dist: Vec<Option<W>> = vec![None; self.node_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(W::zero());
        heap.push(Reverse((W::zero(), source)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if dist[x].as_ref().is_some_and(|best| *best < d) {
                continue;
            }
            for &(y, e) in &self.adj[x] {
                let nd = d.clone() + lengths[e].clone();
                if dist[y].as_ref().is_none_or(|cur| nd < *cur) {
                    dist[y] = Some(nd.clone());
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        Ok(dist)
    }

    pub fn weighted_distance<W: Length>(
        &self,
        lengths: &[W],
        u: NodeId,
        v: NodeId,
    ) -> Result<Option<W>, InstanceError> {
        self.check_node(v)?;
        Ok(self.weighted_distances_from(lengths, u)?.swap_remove(v))
    }

    /// Same graph restricted to the listed sessions, in the listed order.
    pub fn subinstance(&self, sessions: &[usize]) -> Result<UnicastInstance, InstanceError> {
        if sessions.is_empty() {
            return Err(InstanceError::EmptySubset);
        }
        let mut picked = Vec::with_capacity(sessions.len());
        for &i in sessions {
            picked.push(self.sessions.get(i).ok_or(InstanceError::SessionOutOfRange(i))?.clone());
        }
        let mut out = self.clone();
        out.sessions = picked;
        Ok(out)
    }

    /// Same instance with every demand multiplied by `w`.
    pub fn scale_demands(&self, w: u64) -> UnicastInstance {
        let mut out = self.clone();
        for s in &mut out.sessions {
            s.demand *= w;
        }
        out
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            nodes: self.names.clone(),
            edges: self.edges.iter().map(|e| (self.names[e.u].clone(), self.names[e.v].clone(), e.capacity)).collect(),
            sessions: self
                .sessions
                .iter()
                .map(|s| (self.names[s.source].clone(), self.names[s.sink].clone(), s.demand))
                .collect(),
            cut_edges: None,
            params: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).unwrap()
    }

    pub fn from_json(text: &str) -> Result<UnicastInstance, InstanceError> {
        InstanceFile::parse(text)?.into_instance()
    }
}

/// Incremental construction by node name.
#[derive(Default)]
pub struct InstanceBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    sessions: Vec<Session>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn edge(&mut self, u: &str, v: &str, capacity: u64) -> EdgeId {
        let (u, v) = (self.node(u), self.node(v));
        self.edges.push(Edge { u, v, capacity });
        self.edges.len() - 1
    }

    pub fn session(&mut self, s: &str, t: &str, demand: u64) -> usize {
        let (source, sink) = (self.node(s), self.node(t));
        self.sessions.push(Session { source, sink, demand });
        self.sessions.len() - 1
    }

    pub fn build(self) -> UnicastInstance {
        UnicastInstance::new(self.names, self.edges, self.sessions).expect("builder keeps ids consistent")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapParams {
    pub a: u64,
    pub b: u64,
    pub f: u64,
    pub k: u64,
    pub m: u64,
    pub r: Ratio,
    pub u: Ratio,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsFile {
    pub a: u64,
    pub b: u64,
    pub f: u64,
    pub k: u64,
    pub m: u64,
    pub r: JsonRatio,
    pub u: JsonRatio,
}

impl From<&GapParams> for ParamsFile {
    fn from(p: &GapParams) -> Self {
        ParamsFile { a: p.a, b: p.b, f: p.f, k: p.k, m: p.m, r: JsonRatio(p.r.clone()), u: JsonRatio(p.u.clone()) }
    }
}

impl From<ParamsFile> for GapParams {
    fn from(p: ParamsFile) -> Self {
        GapParams { a: p.a, b: p.b, f: p.f, k: p.k, m: p.m, r: p.r.0, u: p.u.0 }
    }
}

/// A unicast instance with a designated cut set `F` and its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapInstance {
    pub instance: UnicastInstance,
    pub cut_edges: Vec<EdgeId>,
    pub params: GapParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapViolation {
    TerminalsOverlap,
    NonUnitCapacity(EdgeId),
    NonUnitDemand(usize),
    CutSize { f: u64, actual: usize },
    SessionCount { k: u64, actual: usize },
    TooManyEdges { m: u64, actual: usize },
    RatioBelowR,
    DensityAboveU,
    SessionTooClose { session: usize, distance: u64, b: u64 },
    UnknownCutEdge(EdgeId),
}

impl fmt::Display for GapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapViolation::TerminalsOverlap => write!(f, "terminals are not pairwise disjoint"),
            GapViolation::NonUnitCapacity(e) => write!(f, "edge {e} has non-unit capacity"),
            GapViolation::NonUnitDemand(i) => write!(f, "session {i} has non-unit demand"),
            GapViolation::CutSize { f: ff, actual } => write!(f, "f = {ff} but |F| = {actual}"),
            GapViolation::SessionCount { k, actual } => write!(f, "k = {k} but there are {actual} sessions"),
            GapViolation::TooManyEdges { m, actual } => write!(f, "|E| = {actual} exceeds m = {m}"),
            GapViolation::RatioBelowR => write!(f, "k/f < r"),
            GapViolation::DensityAboveU => write!(f, "m/f > u"),
            GapViolation::SessionTooClose { session, distance, b } => {
                write!(f, "session {session}: distance {distance} without F is below b = {b}")
            }
            GapViolation::UnknownCutEdge(e) => write!(f, "cut edge {e} does not exist"),
        }
    }
}

impl GapInstance {
    /// Every gap-instance invariant that fails.
    pub fn violations(&self) -> Vec<GapViolation> {
        let inst = &self.instance;
        let p = &self.params;
        let mut out = Vec::new();
        let mut terminals: Vec<NodeId> = inst.sessions.iter().flat_map(|s| [s.source, s.sink]).collect();
        terminals.sort_unstable();
        if terminals.windows(2).any(|w| w[0] == w[1]) {
            out.push(GapViolation::TerminalsOverlap);
        }
        for (id, e) in inst.edges.iter().enumerate() {
            if e.capacity != 1 {
                out.push(GapViolation::NonUnitCapacity(id));
            }
        }
        for (i, s) in inst.sessions.iter().enumerate() {
            if s.demand != 1 {
                out.push(GapViolation::NonUnitDemand(i));
            }
        }
        let mut cut = self.cut_edges.clone();
        cut.sort_unstable();
        cut.dedup();
        if let Some(&e) = cut.iter().find(|&&e| e >= inst.edge_count()) {
            out.push(GapViolation::UnknownCutEdge(e));
        }
        if p.f != cut.len() as u64 {
            out.push(GapViolation::CutSize { f: p.f, actual: cut.len() });
        }
        if p.k != inst.session_count() as u64 {
            out.push(GapViolation::SessionCount { k: p.k, actual: inst.session_count() });
        }
        if inst.edge_count() as u64 > p.m {
            out.push(GapViolation::TooManyEdges { m: p.m, actual: inst.edge_count() });
        }
        if p.f > 0 {
            let f = Ratio::from_integer(p.f.into());
            if Ratio::from_integer(p.k.into()) / f.clone() < p.r {
                out.push(GapViolation::RatioBelowR);
            }
            if Ratio::from_integer(p.m.into()) / f > p.u {
                out.push(GapViolation::DensityAboveU);
            }
        }
        for (i, d) in self.session_distances().into_iter().enumerate() {
            if let Some(d) = d {
                if d < p.b {
                    out.push(GapViolation::SessionTooClose { session: i, distance: d, b: p.b });
                }
            }
        }
        out
    }

    /// `dist_{G \ F}(s_i, t_i)` for every session; `None` is infinity.
    pub fn session_distances(&self) -> Vec<Option<u64>> {
        let inst = &self.instance;
        let mut gone = vec![false; inst.edge_count()];
        for &e in &self.cut_edges {
            if e < gone.len() {
                gone[e] = true;
            }
        }
        inst.sessions.iter().map(|s| inst.hop_distances_masked(s.source, &gone)[s.sink]).collect()
    }

    pub fn to_file(&self) -> InstanceFile {
        let mut f = self.instance.to_file();
        f.cut_edges = Some(self.cut_edges.clone());
        f.params = Some(ParamsFile::from(&self.params));
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).unwrap()
    }
}

/// Node identifiers may be JSON strings or integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum NameRepr {
    Str(String),
    Int(i64),
}

impl NameRepr {
    fn into_string(self) -> String {
        match self {
            NameRepr::Str(s) => s,
            NameRepr::Int(n) => n.to_string(),
        }
    }
}

fn names<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    Ok(Vec::<NameRepr>::deserialize(d)?.into_iter().map(NameRepr::into_string).collect())
}

fn triples<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<(String, String, u64)>, D::Error> {
    Ok(Vec::<(NameRepr, NameRepr, u64)>::deserialize(d)?
        .into_iter()
        .map(|(a, b, c)| (a.into_string(), b.into_string(), c))
        .collect())
}

/// On-disk instance format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(deserialize_with = "names")]
    pub nodes: Vec<String>,
    #[serde(deserialize_with = "triples")]
    pub edges: Vec<(String, String, u64)>,
    #[serde(deserialize_with = "triples")]
    pub sessions: Vec<(String, String, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_edges: Option<Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsFile>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))
    }

    /// All violations, including references to undeclared nodes.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashMap::new();
        for n in &self.nodes {
            if seen.insert(n.as_str(), ()).is_some() {
                out.push(Violation::DuplicateNode(n.clone()));
            }
        }
        let mut unknown: Vec<&String> = self
            .edges
            .iter()
            .chain(&self.sessions)
            .flat_map(|(a, b, _)| [a, b])
            .filter(|n| !seen.contains_key(n.as_str()))
            .collect();
        unknown.sort();
        unknown.dedup();
        out.extend(unknown.into_iter().map(|n| Violation::UnknownNode(n.clone())));
        if out.is_empty() {
            if let Ok(inst) = self.clone().into_instance() {
                out.extend(inst.validate());
            }
        }
        out
    }

    pub fn into_instance(self) -> Result<UnicastInstance, InstanceError> {
        let mut index = HashMap::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(InstanceError::DuplicateNode(n.clone()));
            }
        }
        let look = |n: &String| index.get(n).copied().ok_or_else(|| InstanceError::UnknownNode(n.clone()));
        let mut edges = Vec::with_capacity(self.edges.len());
        for (a, b, c) in &self.edges {
            edges.push(Edge { u: look(a)?, v: look(b)?, capacity: *c });
        }
        let mut sessions = Vec::with_capacity(self.sessions.len());
        for (a, b, d) in &self.sessions {
            sessions.push(Session { source: look(a)?, sink: look(b)?, demand: *d });
        }
        UnicastInstance::new(self.nodes, edges, sessions)
    }

    /// Gap view of the file, when both `cut_edges` and `params` are present.
    pub fn into_gap(self) -> Result<Option<GapInstance>, InstanceError> {
        let cut = self.cut_edges.clone();
        let params = self.params.clone();
        let instance = self.into_instance()?;
        Ok(match (cut, params) {
            (Some(cut_edges), Some(p)) => Some(GapInstance { instance, cut_edges, params: p.into() }),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> UnicastInstance {
        let mut b = InstanceBuilder::new();
        for i in 0..n - 1 {
            b.edge(&format!("v{i}"), &format!("v{}", i + 1), 1);
        }
        b.session("v0", &format!("v{}", n - 1), 1);
        b.build()
    }

    #[test]
    fn hop_distance_on_a_path() {
        let g = path_graph(5);
        assert_eq!(g.hop_distance(&[], 0, 4).unwrap(), Some(4));
        assert_eq!(g.hop_distance(&[2], 0, 4).unwrap(), None);
        assert_eq!(g.hop_distance(&[], 0, 0).unwrap(), Some(0));
        assert!(matches!(g.hop_distance(&[], 0, 9), Err(InstanceError::NodeOutOfRange(9))));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let g = path_graph(3);
        let back = UnicastInstance::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.validate().is_empty());

        let f = InstanceFile::parse(r#"{"nodes":["a","b","c"],"edges":[["a","b",0]],"sessions":[["a","zz",1]]}"#).unwrap();
        assert_eq!(f.validate(), vec![Violation::UnknownNode("zz".into())]);
        let f = InstanceFile::parse(r#"{"nodes":["a","b","c"],"edges":[["a","b",0]],"sessions":[["a","b",0]]}"#).unwrap();
        let v = f.validate();
        assert!(v.contains(&Violation::NotConnected));
        assert!(v.contains(&Violation::ZeroCapacity(0)));
        assert!(v.contains(&Violation::ZeroDemand(0)));
        assert!(InstanceFile::parse("{\"nodes\": [").is_err());
    }

    #[test]
    fn integer_node_ids_are_accepted() {
        let g = UnicastInstance::from_json(r#"{"nodes":[1,2],"edges":[[1,2,3]],"sessions":[[1,2,1]]}"#).unwrap();
        assert_eq!(g.name(0), "1");
        assert_eq!(g.edges[0].capacity, 3);
    }

    #[test]
    fn dijkstra_rejects_negative_lengths() {
        let g = path_graph(3);
        assert_eq!(g.weighted_distance(&[2i64, 3], 0, 2).unwrap(), Some(5));
        assert!(matches!(g.weighted_distance(&[2i64, -1], 0, 2), Err(InstanceError::NegativeLength(1))));
    }

    #[test]
    fn subinstance_keeps_graph() {
        let g = path_graph(3);
        assert!(matches!(g.subinstance(&[]), Err(InstanceError::EmptySubset)));
        assert_eq!(g.subinstance(&[0]).unwrap(), g);
        assert!(g.subinstance(&[1]).is_err());
    }

    #[test]
    fn simplify_removes_cycles() {
        let p = Path { nodes: vec![0, 1, 2, 1, 3], edges: vec![10, 11, 11, 12] };
        assert_eq!(p.simplify(), Path { nodes: vec![0, 1, 3], edges: vec![10, 12] });
        let q = Path { nodes: vec![0, 1, 0, 2], edges: vec![5, 6, 7] };
        assert_eq!(q.simplify(), Path { nodes: vec![0, 2], edges: vec![7] });
    }
}
