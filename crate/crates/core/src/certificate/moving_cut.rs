//! Moving cuts and their verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CertError;
use crate::instance::UnicastInstance;

/// Integer edge lengths `l_e >= 1` together with a session subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingCut {
    pub lengths: Vec<u64>,
    pub subset: Vec<usize>,
    /// `sum_e c_e (l_e - 1)`.
    pub capacity: u64,
    /// `min_{i, j in subset} dist_l(s_i, t_j)`; `None` is infinity.
    pub distance: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub capacity: u64,
    pub distance: Option<u64>,
    pub demand: u64,
    /// `capacity < demand`, in which case `distance` bounds every coding
    /// protocol from below.
    pub valid: bool,
}

impl MovingCut {
    pub fn new(inst: &UnicastInstance, lengths: Vec<u64>, mut subset: Vec<usize>) -> Result<MovingCut, CertError> {
        subset.sort_unstable();
        subset.dedup();
        let mut cut = MovingCut { lengths, subset, capacity: 0, distance: None };
        let r = verify_moving_cut(inst, &cut)?;
        cut.capacity = r.capacity;
        cut.distance = r.distance;
        Ok(cut)
    }

    /// The coding lower bound this cut certifies, when valid.
    pub fn claimed_lower_bound(&self, inst: &UnicastInstance) -> Option<u64> {
        let demand: u64 = self.subset.iter().map(|&i| inst.sessions[i].demand).sum();
        if self.capacity < demand {
            self.distance
        } else {
            None
        }
    }

    pub fn to_json(&self, inst: &UnicastInstance) -> String {
        let f = CutFile {
            lengths: self.lengths.iter().copied().enumerate().collect(),
            subset: self.subset.clone(),
            capacity: self.capacity,
            distance: self.distance,
            claimed_lower_bound: self.claimed_lower_bound(inst),
        };
        serde_json::to_string_pretty(&f).unwrap()
    }

    /// Parses a cut; capacity and distance are recomputed from the lengths.
    pub fn from_json(inst: &UnicastInstance, text: &str) -> Result<MovingCut, CertError> {
        let f: CutFile = serde_json::from_str(text).map_err(|e| CertError::Json(e.to_string()))?;
        if f.lengths.len() != inst.edge_count() || f.lengths.keys().any(|&e| e >= inst.edge_count()) {
            return Err(CertError::LengthCount { got: f.lengths.len(), expected: inst.edge_count() });
        }
        MovingCut::new(inst, f.lengths.into_values().collect(), f.subset)
    }
}

#[derive(Serialize, Deserialize)]
struct CutFile {
    lengths: BTreeMap<usize, u64>,
    subset: Vec<usize>,
    capacity: u64,
    distance: Option<u64>,
    claimed_lower_bound: Option<u64>,
}

/// Recomputes capacity and cross distance from scratch.
pub fn verify_moving_cut(inst: &UnicastInstance, cut: &MovingCut) -> Result<CutReport, CertError> {
    if cut.lengths.len() != inst.edge_count() {
        return Err(CertError::LengthCount { got: cut.lengths.len(), expected: inst.edge_count() });
    }
    if let Some(e) = cut.lengths.iter().position(|&l| l < 1) {
        return Err(CertError::LengthBelowOne(e));
    }
    if cut.subset.is_empty() || cut.subset.iter().any(|&i| i >= inst.session_count()) {
        return Err(CertError::BadSubset);
    }
    let capacity: u64 = inst.edges.iter().zip(&cut.lengths).map(|(e, l)| e.capacity * (l - 1)).sum();
    let demand: u64 = cut.subset.iter().map(|&i| inst.sessions[i].demand).sum();
    let mut distance: Option<u64> = None;
    for &i in &cut.subset {
        let dist = inst.weighted_distances_from(&cut.lengths, inst.sessions[i].source)?;
        for &j in &cut.subset {
            if let Some(d) = dist[inst.sessions[j].sink] {
                distance = Some(distance.map_or(d, |x| x.min(d)));
            }
        }
    }
    Ok(CutReport { capacity, distance, demand, valid: capacity < demand })
}
