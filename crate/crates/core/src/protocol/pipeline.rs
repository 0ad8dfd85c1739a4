use std::collections::HashMap;

use super::replay::direction;
use super::{replay_routing, CompletionTimes, ProtocolError};
use crate::instance::UnicastInstance;
use crate::ratio::Ratio;
use crate::route::{Schedule, ScheduledPacket};

#[derive(Clone, Debug)]
pub struct Pipelined {
    /// Schedule of `w` copies on the instance with every demand scaled by `w`.
    pub schedule: Schedule,
    /// Round offset of each copy; copy `c` starts no earlier than offset `c`.
    pub offsets: Vec<u64>,
    pub rounds_used: u64,
    /// `w / rounds_used`: copies of every session per round.
    pub rate: Ratio,
    /// Most uses of one edge direction by one copy, over its capacity.
    pub amortized_cost: u64,
    pub times: CompletionTimes,
}

/// Runs `w` copies of a schedule, each shifted by the smallest offset after
/// the previous copy's that keeps every edge direction within capacity.
/// Copy `c` of session `i` becomes copies `c d_i .. (c + 1) d_i` of the
/// scaled instance.
pub fn pipeline(inst: &UnicastInstance, schedule: &Schedule, w: u64) -> Result<Pipelined, ProtocolError> {
    replay_routing(inst, schedule)?;
    let w = w.max(1);
    let mut usage: Vec<(u64, usize, u8)> = Vec::new();
    let mut totals: HashMap<(usize, u8), u64> = HashMap::new();
    for p in &schedule.packets {
        for (h, &round) in p.departures.iter().enumerate() {
            let edge = p.path.edges[h];
            let dir = direction(inst, edge, p.path.nodes[h]);
            usage.push((round, edge, dir));
            *totals.entry((edge, dir)).or_insert(0) += 1;
        }
    }
    let amortized_cost = totals.iter().map(|(&(e, _), &n)| n.div_ceil(inst.edges[e].capacity)).max().unwrap_or(0);

    let mut load: HashMap<(u64, usize, u8), u64> = HashMap::new();
    let mut offsets: Vec<u64> = Vec::with_capacity(w as usize);
    for c in 0..w {
        let mut o = offsets.last().map_or(0, |&prev| prev + 1);
        debug_assert!(o >= c);
        'search: loop {
            let mut extra: HashMap<(u64, usize, u8), u64> = HashMap::new();
            for &(round, edge, dir) in &usage {
                let key = (round + o, edge, dir);
                let n = extra.entry(key).or_insert(0);
                *n += 1;
                if load.get(&key).copied().unwrap_or(0) + *n > inst.edges[edge].capacity {
                    o += 1;
                    continue 'search;
                }
            }
            for (key, n) in extra {
                *load.entry(key).or_insert(0) += n;
            }
            break;
        }
        offsets.push(o);
    }

    let mut packets = Vec::with_capacity(schedule.packets.len() * w as usize);
    for (c, &o) in offsets.iter().enumerate() {
        for p in &schedule.packets {
            let d = inst.sessions[p.session].demand as usize;
            packets.push(ScheduledPacket {
                session: p.session,
                copy: c * d + p.copy,
                path: p.path.clone(),
                departures: p.departures.iter().map(|r| r + o).collect(),
            });
        }
    }
    let pipelined = Schedule::new(packets);
    let times = replay_routing(&inst.scale_demands(w), &pipelined)?;
    let rounds_used = pipelined.makespan;
    let rate = if rounds_used == 0 { Ratio::from_integer(0.into()) } else { Ratio::new(w.into(), rounds_used.into()) };
    Ok(Pipelined { schedule: pipelined, offsets, rounds_used, rate, amortized_cost, times })
}
