//! Bounds from deleting an edge set.

use super::CertError;
use crate::instance::{EdgeId, UnicastInstance};
use crate::ratio::{self, Ratio};

fn unit_check(inst: &UnicastInstance) -> Result<(), CertError> {
    if inst.edges.iter().any(|e| e.capacity != 1) || inst.sessions.iter().any(|s| s.demand != 1) {
        Err(CertError::NotUnit)
    } else {
        Ok(())
    }
}

fn bound(inst: &UnicastInstance, removed: &[EdgeId], t: u64) -> Ratio {
    let mut f = removed.to_vec();
    f.sort_unstable();
    f.dedup();
    let t = ratio::int(t as i64);
    if f.is_empty() {
        t
    } else {
        t.min(ratio::frac(inst.session_count() as i64, f.len() as i64))
    }
}

/// `min(T, k/|F|)` as a routing lower bound, valid when every session is at
/// distance at least `T` once `F` is deleted. `F = {}` gives `T`.
pub fn deletion_routing_lb(inst: &UnicastInstance, removed: &[EdgeId], t: u64) -> Result<Ratio, CertError> {
    unit_check(inst)?;
    for s in &inst.sessions {
        let d = inst.hop_distance(removed, s.source, s.sink)?;
        if let Some(d) = d.filter(|&d| d < t) {
            return Err(CertError::PairTooClose {
                source_node: inst.name(s.source).into(),
                sink_node: inst.name(s.sink).into(),
                distance: d,
                required: t,
            });
        }
    }
    Ok(bound(inst, removed, t))
}

/// `min(T, k/|F|)` as a coding lower bound, valid when every source is at
/// distance at least `T` from every sink once `F` is deleted.
pub fn deletion_coding_lb(inst: &UnicastInstance, removed: &[EdgeId], t: u64) -> Result<Ratio, CertError> {
    unit_check(inst)?;
    for s in &inst.sessions {
        let dist = inst.hop_distances_from(s.source, removed);
        for u in &inst.sessions {
            if let Some(d) = dist[u.sink].filter(|&d| d < t) {
                return Err(CertError::PairTooClose {
                    source_node: inst.name(s.source).into(),
                    sink_node: inst.name(u.sink).into(),
                    distance: d,
                    required: t,
                });
            }
        }
    }
    Ok(bound(inst, removed, t))
}
