//! Synchronous-round protocols: routing schedules and GF(2)-linear coding
//! traces, their replay, composition along a product, and derived
//! quantities (weighted norms of completion times, bucketing, pipelining).
//!
//! Every session `i` owns `d_i` consecutive source bits, in session order;
//! [`bit_offsets`] gives the first bit of each session.

mod aggregate;
mod bucketed;
mod compose;
mod pipeline;
mod replay;
mod xor;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::BitVector;
use crate::instance::{EdgeId, UnicastInstance};

pub use aggregate::{lp_aggregate, LpValue, Norm};
pub use bucketed::{bucketed_schedule, Bucketed, DyadicClass, Router};
pub use compose::compose_product_protocol;
pub use pipeline::{pipeline, Pipelined};
pub use replay::{replay_coding, replay_routing, schedule_to_trace};
pub use xor::xor_star_protocol;

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("round {round}: edge {edge} direction {dir} carries {load} > capacity {capacity}")]
    Capacity { round: u64, edge: EdgeId, dir: u8, load: u64, capacity: u64 },
    #[error("round {round}: edge {edge} direction {dir} sends data its tail does not have")]
    Causality { round: u64, edge: EdgeId, dir: u8 },
    #[error("round {round}: malformed transmission: {detail}")]
    Malformed { round: u64, detail: String },
    #[error("trace is over {got} bits, the instance has {expected}")]
    BitCount { expected: usize, got: usize },
    #[error("sessions never delivered: {0:?}")]
    Undelivered(Vec<usize>),
    #[error("packet {index}: {detail}")]
    BadPacket { index: usize, detail: String },
    #[error("session {session} copy {copy} is not scheduled")]
    MissingCopy { session: usize, copy: u64 },
    #[error("session {session} copy {copy} is scheduled twice")]
    DuplicateCopy { session: usize, copy: u64 },
    #[error("weight {0} is negative")]
    NegativeWeight(usize),
    #[error("{times} completion times but {weights} weights")]
    WeightCount { times: usize, weights: usize },
    #[error("norm exponent must be at least 1")]
    Exponent,
    #[error("session {0} has coding time 0 but distinct terminals")]
    ZeroCodingTime(usize),
    #[error("session {session}: routed at {routed}, above 4 * {alpha} * {coding}")]
    BucketBound { session: usize, routed: u64, coding: u64, alpha: String },
    #[error("routing failed: {0}")]
    Routing(String),
    #[error("product wiring: {0}")]
    Wiring(String),
    #[error("inner protocol takes {len} rounds, more than the cut path length {path_length}")]
    InnerTooLong { len: usize, path_length: usize },
    #[error("xor protocol needs k >= 2, got {0}")]
    TooFewSessions(usize),
    #[error("invalid trace JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Instance(#[from] crate::instance::InstanceError),
}

/// What crosses an edge in one direction during one round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// GF(2) combination of source bits.
    Coded(BitVector),
    /// Copy `copy` of session `session`, forwarded unchanged.
    Packet { session: usize, copy: u64 },
}

/// `dir` is 0 from the edge's first endpoint to its second, 1 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transmission {
    pub edge: EdgeId,
    pub dir: u8,
    pub payload: Payload,
}

/// Round `r` (1-based) is `rounds[r - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolTrace {
    pub bits: usize,
    pub rounds: Vec<Vec<Transmission>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionTimes(pub Vec<u64>);

impl CompletionTimes {
    pub fn makespan(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// First source bit of every session.
pub fn bit_offsets(inst: &UnicastInstance) -> Vec<usize> {
    let mut acc = 0usize;
    inst.sessions
        .iter()
        .map(|s| {
            let o = acc;
            acc += s.demand as usize;
            o
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TransmissionFile {
    edge: EdgeId,
    dir: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    session: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    copy: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct TraceFile {
    bits: usize,
    rounds: Vec<Vec<TransmissionFile>>,
}

impl ProtocolTrace {
    pub fn makespan(&self) -> usize {
        self.rounds.iter().rposition(|r| !r.is_empty()).map_or(0, |r| r + 1)
    }

    pub fn to_json(&self) -> String {
        let file = TraceFile {
            bits: self.bits,
            rounds: self
                .rounds
                .iter()
                .map(|round| {
                    round
                        .iter()
                        .map(|t| match &t.payload {
                            Payload::Coded(v) => TransmissionFile { edge: t.edge, dir: t.dir, coeffs: Some(v.to_hex()), session: None, copy: None },
                            Payload::Packet { session, copy } => {
                                TransmissionFile { edge: t.edge, dir: t.dir, coeffs: None, session: Some(*session), copy: Some(*copy) }
                            }
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&file).unwrap()
    }

    pub fn from_json(text: &str) -> Result<ProtocolTrace, ProtocolError> {
        let file: TraceFile = serde_json::from_str(text).map_err(|e| ProtocolError::Json(e.to_string()))?;
        let mut rounds = Vec::with_capacity(file.rounds.len());
        for (r, round) in file.rounds.into_iter().enumerate() {
            let mut out = Vec::with_capacity(round.len());
            for t in round {
                let payload = match (t.coeffs, t.session, t.copy) {
                    (Some(hex), None, None) => Payload::Coded(
                        BitVector::from_hex(file.bits, &hex).map_err(|e| ProtocolError::Json(format!("round {}: {e}", r + 1)))?,
                    ),
                    (None, Some(session), Some(copy)) => Payload::Packet { session, copy },
                    _ => return Err(ProtocolError::Json(format!("round {}: need either coeffs or session and copy", r + 1))),
                };
                out.push(Transmission { edge: t.edge, dir: t.dir, payload });
            }
            rounds.push(out);
        }
        Ok(ProtocolTrace { bits: file.bits, rounds })
    }
}
