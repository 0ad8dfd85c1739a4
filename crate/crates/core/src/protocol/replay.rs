use std::collections::HashMap;

use super::{bit_offsets, CompletionTimes, Payload, ProtocolError, ProtocolTrace, Transmission};
use crate::gf2::{BitVector, Span};
use crate::instance::{NodeId, UnicastInstance};
use crate::route::Schedule;

/// Direction of crossing `edge` when leaving `from`.
pub(crate) fn direction(inst: &UnicastInstance, edge: usize, from: NodeId) -> u8 {
    if inst.edges[edge].u == from {
        0
    } else {
        1
    }
}

/// Replays a coding trace: each transmitted vector must lie in the span of
/// what its tail knew before the round, and each edge carries at most its
/// capacity per direction per round. Routing descriptors stand for the unit
/// vector of their source bit.
pub fn replay_coding(inst: &UnicastInstance, trace: &ProtocolTrace) -> Result<CompletionTimes, ProtocolError> {
    let bits = inst.total_demand() as usize;
    if trace.bits != bits {
        return Err(ProtocolError::BitCount { expected: bits, got: trace.bits });
    }
    let offsets = bit_offsets(inst);
    let mut spans: Vec<Span> = (0..inst.node_count()).map(|_| Span::new(bits)).collect();
    for (i, s) in inst.sessions.iter().enumerate() {
        for c in 0..s.demand as usize {
            spans[s.source].insert(&BitVector::unit(bits, offsets[i] + c));
        }
    }
    let units = |i: usize| (0..inst.sessions[i].demand as usize).map(move |c| (i, c));
    let delivered = |spans: &[Span], i: usize| {
        let s = &inst.sessions[i];
        units(i).all(|(_, c)| spans[s.sink].contains(&BitVector::unit(bits, offsets[i] + c)))
    };
    let mut times: Vec<Option<u64>> =
        (0..inst.session_count()).map(|i| delivered(&spans, i).then_some(0)).collect();

    for (r, round) in trace.rounds.iter().enumerate() {
        let round_no = r as u64 + 1;
        let mut load: HashMap<(usize, u8), u64> = HashMap::new();
        let mut arrivals = Vec::with_capacity(round.len());
        for t in round {
            let Transmission { edge, dir, payload } = t;
            let e = inst.edges.get(*edge).ok_or_else(|| ProtocolError::Malformed { round: round_no, detail: format!("edge {edge} does not exist") })?;
            if *dir > 1 {
                return Err(ProtocolError::Malformed { round: round_no, detail: format!("direction {dir}") });
            }
            let (tail, head) = if *dir == 0 { (e.u, e.v) } else { (e.v, e.u) };
            let v = match payload {
                Payload::Coded(v) => {
                    if v.len() != bits {
                        return Err(ProtocolError::Malformed { round: round_no, detail: format!("vector of {} bits", v.len()) });
                    }
                    v.clone()
                }
                Payload::Packet { session, copy } => {
                    if inst.sessions.get(*session).is_none_or(|s| *copy >= s.demand) {
                        return Err(ProtocolError::Malformed { round: round_no, detail: format!("no copy {copy} of session {session}") });
                    }
                    BitVector::unit(bits, offsets[*session] + *copy as usize)
                }
            };
            if !spans[tail].contains(&v) {
                return Err(ProtocolError::Causality { round: round_no, edge: *edge, dir: *dir });
            }
            let l = load.entry((*edge, *dir)).or_insert(0);
            *l += 1;
            if *l > e.capacity {
                return Err(ProtocolError::Capacity { round: round_no, edge: *edge, dir: *dir, load: *l, capacity: e.capacity });
            }
            arrivals.push((head, v));
        }
        for (head, v) in arrivals {
            spans[head].insert(&v);
        }
        for i in 0..times.len() {
            if times[i].is_none() && delivered(&spans, i) {
                times[i] = Some(round_no);
            }
        }
    }
    let missing: Vec<usize> = times.iter().enumerate().filter(|(_, t)| t.is_none()).map(|(i, _)| i).collect();
    if !missing.is_empty() {
        return Err(ProtocolError::Undelivered(missing));
    }
    Ok(CompletionTimes(times.into_iter().map(Option::unwrap).collect()))
}

/// Replays a routing schedule: every copy of every session follows a walk
/// from its source to its sink, hops happen in strictly increasing rounds
/// from round 1, and per round each edge carries at most its capacity in
/// each direction.
pub fn replay_routing(inst: &UnicastInstance, schedule: &Schedule) -> Result<CompletionTimes, ProtocolError> {
    let mut seen: HashMap<(usize, u64), usize> = HashMap::new();
    let mut load: HashMap<(u64, usize, u8), u64> = HashMap::new();
    let mut times = vec![0u64; inst.session_count()];
    for (index, p) in schedule.packets.iter().enumerate() {
        let bad = |detail: String| ProtocolError::BadPacket { index, detail };
        let s = inst.sessions.get(p.session).ok_or_else(|| bad(format!("unknown session {}", p.session)))?;
        if p.copy as u64 >= s.demand {
            return Err(bad(format!("copy {} but demand {}", p.copy, s.demand)));
        }
        if seen.insert((p.session, p.copy as u64), index).is_some() {
            return Err(ProtocolError::DuplicateCopy { session: p.session, copy: p.copy as u64 });
        }
        if !p.path.is_walk_in(inst) || p.path.source() != s.source || p.path.sink() != s.sink {
            return Err(bad("path is not a walk from the source to the sink".into()));
        }
        if p.departures.len() != p.path.hops() {
            return Err(bad(format!("{} departures for {} hops", p.departures.len(), p.path.hops())));
        }
        let mut prev = 0u64;
        for (h, &round) in p.departures.iter().enumerate() {
            let edge = p.path.edges[h];
            let dir = direction(inst, edge, p.path.nodes[h]);
            if round <= prev {
                return Err(ProtocolError::Causality { round, edge, dir });
            }
            prev = round;
            let l = load.entry((round, edge, dir)).or_insert(0);
            *l += 1;
            let cap = inst.edges[edge].capacity;
            if *l > cap {
                return Err(ProtocolError::Capacity { round, edge, dir, load: *l, capacity: cap });
            }
        }
        times[p.session] = times[p.session].max(p.completion());
    }
    for (i, s) in inst.sessions.iter().enumerate() {
        for c in 0..s.demand {
            if !seen.contains_key(&(i, c)) {
                return Err(ProtocolError::MissingCopy { session: i, copy: c });
            }
        }
    }
    Ok(CompletionTimes(times))
}

/// The forwarding trace of a routing schedule.
pub fn schedule_to_trace(inst: &UnicastInstance, schedule: &Schedule) -> ProtocolTrace {
    let mut rounds: Vec<Vec<Transmission>> = vec![Vec::new(); schedule.makespan as usize];
    for p in &schedule.packets {
        for (h, &round) in p.departures.iter().enumerate() {
            let edge = p.path.edges[h];
            let r = round as usize;
            if rounds.len() < r {
                rounds.resize(r, Vec::new());
            }
            rounds[r - 1].push(Transmission {
                edge,
                dir: direction(inst, edge, p.path.nodes[h]),
                payload: Payload::Packet { session: p.session, copy: p.copy as u64 },
            });
        }
    }
    ProtocolTrace { bits: inst.total_demand() as usize, rounds }
}
