//! Store-and-forward scheduling of fixed paths.

use std::collections::HashMap;

use rand::Rng;

use super::{PathAssignment, Schedule, ScheduledPacket};
use crate::instance::{EdgeId, UnicastInstance};
use crate::ratio;
use crate::seed;

/// Constant in the guarantee `makespan <= beta * (ceil(C) + D)` for
/// congestion `C` and dilation `D`, checked by the test suite.
pub const SCHEDULER_BETA: u64 = 16;

struct Packet<'a> {
    session: usize,
    copy: usize,
    path: &'a crate::instance::Path,
}

/// Greedy forwarding: each packet waits for its delay, then every round the
/// ready packets claim their next edge in FIFO order of arrival at their
/// current node, ties by packet id; an edge carries at most `c_e` packets
/// per round regardless of direction.
fn simulate(inst: &UnicastInstance, packets: &[Packet], delays: &[u64]) -> Vec<Vec<u64>> {
    let n = packets.len();
    let mut hop = vec![0usize; n];
    let mut ready: Vec<u64> = delays.iter().map(|d| d + 1).collect();
    let mut departures: Vec<Vec<u64>> = packets.iter().map(|p| Vec::with_capacity(p.path.hops())).collect();
    let mut pending: Vec<usize> = (0..n).filter(|&i| packets[i].path.hops() > 0).collect();
    let mut used = vec![0u64; inst.edge_count()];
    let mut round = 1u64;
    while !pending.is_empty() {
        let earliest = pending.iter().map(|&i| ready[i]).min().unwrap();
        round = round.max(earliest);
        let mut active: Vec<usize> = pending.iter().copied().filter(|&i| ready[i] <= round).collect();
        active.sort_by_key(|&i| (ready[i], i));
        let mut touched: Vec<EdgeId> = Vec::new();
        for i in active {
            let e = packets[i].path.edges[hop[i]];
            if used[e] < inst.edges[e].capacity {
                if used[e] == 0 {
                    touched.push(e);
                }
                used[e] += 1;
                departures[i].push(round);
                hop[i] += 1;
                ready[i] = round + 1;
            }
        }
        for e in touched {
            used[e] = 0;
        }
        pending.retain(|&i| hop[i] < packets[i].path.hops());
        round += 1;
    }
    departures
}

/// Moves every hop to the earliest round allowed by its predecessor hop and
/// by capacity, visiting hops in order of their current rounds.
fn compact(inst: &UnicastInstance, packets: &[Packet], departures: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut order: Vec<(u64, usize, usize)> = Vec::new();
    for (i, d) in departures.iter().enumerate() {
        for (h, &r) in d.iter().enumerate() {
            order.push((r, i, h));
        }
    }
    order.sort_unstable();
    let mut load: HashMap<(u64, EdgeId), u64> = HashMap::new();
    let mut out: Vec<Vec<u64>> = departures.iter().map(|d| Vec::with_capacity(d.len())).collect();
    for (_, i, h) in order {
        let e = packets[i].path.edges[h];
        let mut r = if h == 0 { 1 } else { out[i][h - 1] + 1 };
        while load.get(&(r, e)).copied().unwrap_or(0) >= inst.edges[e].capacity {
            r += 1;
        }
        *load.entry((r, e)).or_default() += 1;
        out[i].push(r);
    }
    out
}

fn makespan(d: &[Vec<u64>]) -> u64 {
    d.iter().filter_map(|x| x.last()).copied().max().unwrap_or(0)
}

/// Random-delay scheduling of the assigned paths.
///
/// Each packet draws a start delay uniformly from `[0, ceil(C))` and then
/// moves greedily; the plain greedy schedule without delays is computed as
/// well, both are compacted, and the shorter one is returned (ties prefer
/// the delay-free one). Packets are numbered in (session, copy) order.
pub fn schedule(inst: &UnicastInstance, assignment: &PathAssignment, seed: u64) -> Schedule {
    let packets: Vec<Packet> = assignment
        .paths
        .iter()
        .enumerate()
        .flat_map(|(session, ps)| ps.iter().enumerate().map(move |(copy, path)| Packet { session, copy, path }))
        .collect();
    let frame = ratio::ceil_u64(&assignment.congestion).max(1);
    let mut rng = seed::rng(seed, "delay", 0);
    let random: Vec<u64> = packets.iter().map(|_| rng.gen_range(0..frame)).collect();
    let zero = vec![0u64; packets.len()];

    let a = compact(inst, &packets, &simulate(inst, &packets, &zero));
    let b = compact(inst, &packets, &simulate(inst, &packets, &random));
    let best = if makespan(&b) < makespan(&a) { b } else { a };
    Schedule::new(
        packets
            .iter()
            .zip(best)
            .map(|(p, departures)| ScheduledPacket { session: p.session, copy: p.copy, path: p.path.clone(), departures })
            .collect(),
    )
}
