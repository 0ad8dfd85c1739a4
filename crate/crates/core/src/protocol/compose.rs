use super::{Payload, ProtocolError, ProtocolTrace, Transmission};
use crate::gap::ProductWiring;
use crate::gf2::BitVector;
use crate::instance::GapInstance;

fn as_vector(p: &Payload, bits: usize) -> Result<BitVector, ProtocolError> {
    match p {
        Payload::Coded(v) if v.len() == bits => Ok(v.clone()),
        Payload::Coded(v) => Err(ProtocolError::BitCount { expected: bits, got: v.len() }),
        Payload::Packet { session, copy: 0 } if *session < bits => Ok(BitVector::unit(bits, *session)),
        Payload::Packet { session, copy } => {
            Err(ProtocolError::Wiring(format!("packet ({session}, {copy}) is not a unit-demand source bit")))
        }
    }
}

/// Runs the outer protocol on every outer copy of the product, one outer
/// round per block of `a2` product rounds. A transmission over a non-cut
/// outer arc becomes the payload of the inner session merged onto that arc;
/// each inner copy with any payload then runs the whole inner protocol with
/// its coefficient vectors evaluated on those payloads. Transmissions over a
/// cut edge walk its replacement path, one hop per product round.
pub fn compose_product_protocol(
    outer: &ProtocolTrace,
    inner: &ProtocolTrace,
    product: &GapInstance,
    wiring: Option<&ProductWiring>,
) -> Result<ProtocolTrace, ProtocolError> {
    let w = wiring.ok_or_else(|| ProtocolError::Wiring("wiring metadata missing".into()))?;
    let a2 = w.path_length;
    if inner.makespan() > a2 {
        return Err(ProtocolError::InnerTooLong { len: inner.makespan(), path_length: a2 });
    }
    if outer.bits != w.outer_sessions {
        return Err(ProtocolError::BitCount { expected: w.outer_sessions, got: outer.bits });
    }
    if inner.bits != w.inner_sessions {
        return Err(ProtocolError::BitCount { expected: w.inner_sessions, got: inner.bits });
    }
    let bits = w.outer_copies * w.outer_sessions;
    if product.instance.total_demand() as usize != bits {
        return Err(ProtocolError::Wiring("product demand does not match the wiring".into()));
    }
    let mut rounds: Vec<Vec<Transmission>> = vec![Vec::new(); outer.rounds.len() * a2];
    for (ro, round) in outer.rounds.iter().enumerate() {
        let base = ro * a2;
        let mut payloads: Vec<Vec<Option<BitVector>>> = vec![vec![None; w.inner_sessions]; w.inner_copies];
        for i in 0..w.outer_copies {
            for t in round {
                let v = as_vector(&t.payload, outer.bits)?.embed(bits, i * w.outer_sessions);
                if let Some(color) = w.color_of(t.edge, t.dir) {
                    let link = w.link(i, color).ok_or_else(|| ProtocolError::Wiring(format!("arc {color} of copy {i} is unmerged")))?;
                    let slot = &mut payloads[link.inner_copy][link.inner_session];
                    if slot.is_some() {
                        return Err(ProtocolError::Wiring(format!("two transmissions on arc {color} of copy {i} in one round")));
                    }
                    *slot = Some(v);
                } else {
                    let cp = w.cut_path(i, t.edge).ok_or_else(|| ProtocolError::Wiring(format!("edge {} of copy {i} has no path", t.edge)))?;
                    let hops = cp.edges.len();
                    for h in 0..hops {
                        let (idx, dir) = if t.dir == 0 { (h, 0) } else { (hops - 1 - h, 1) };
                        rounds[base + h].push(Transmission { edge: cp.edges[idx], dir, payload: Payload::Coded(v.clone()) });
                    }
                }
            }
        }
        for (j, slots) in payloads.iter().enumerate() {
            if slots.iter().all(Option::is_none) {
                continue;
            }
            for (rho, inner_round) in inner.rounds.iter().enumerate() {
                for t in inner_round {
                    let coeffs = as_vector(&t.payload, inner.bits)?;
                    let mut v = BitVector::zeros(bits);
                    for s in coeffs.ones() {
                        if let Some(p) = &slots[s] {
                            v.xor_assign(p);
                        }
                    }
                    if !v.is_zero() {
                        rounds[base + rho].push(Transmission { edge: w.inner_edges[j][t.edge], dir: t.dir, payload: Payload::Coded(v) });
                    }
                }
            }
        }
    }
    Ok(ProtocolTrace { bits, rounds })
}
