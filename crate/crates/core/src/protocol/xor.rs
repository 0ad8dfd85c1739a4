use super::{ProtocolError, ProtocolTrace, Payload, Transmission};
use crate::gap::cross_path_start;
use crate::gf2::BitVector;

/// Three-round coding protocol on the base instance with `k` sessions.
/// Round 1: every source sends its bit to the hub `S` and into each of its
/// private paths. Round 2: `S` sends the XOR of all bits to `T`; the paths
/// advance. Round 3: `T` sends the XOR to every sink, and every private path
/// delivers; sink `t_j` cancels the `k - 1` other bits out of the XOR.
pub fn xor_star_protocol(k: usize) -> Result<ProtocolTrace, ProtocolError> {
    if k < 2 {
        return Err(ProtocolError::TooFewSessions(k));
    }
    let unit = |i: usize| Payload::Coded(BitVector::unit(k, i));
    let mut all = BitVector::zeros(k);
    for i in 0..k {
        all.set(i, true);
    }
    let send = |edge: usize, payload: Payload| Transmission { edge, dir: 0, payload };
    let mut rounds = vec![Vec::new(), Vec::new(), Vec::new()];
    for i in 0..k {
        rounds[0].push(send(i, unit(i)));
    }
    rounds[1].push(send(2 * k, Payload::Coded(all.clone())));
    for j in 0..k {
        rounds[2].push(send(k + j, Payload::Coded(all.clone())));
    }
    for i in 1..=k {
        for j in (1..=k).filter(|&j| j != i) {
            let start = cross_path_start(k, i, j);
            for (h, round) in rounds.iter_mut().enumerate() {
                round.push(send(start + h, unit(i - 1)));
            }
        }
    }
    Ok(ProtocolTrace { bits: k, rounds })
}
