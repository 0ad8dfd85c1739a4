//! Randomized rounding of a fractional path flow.

use rand::distributions::{Distribution, WeightedIndex};
use num_traits::{Signed, Zero};

use super::RouteError;
use crate::flow::FlowSolution;
use crate::instance::{Path, UnicastInstance};
use crate::ratio::{self, Ratio};
use crate::seed;

/// Number of independent sampling attempts before the greedy fallback.
pub const ROUNDING_ATTEMPTS: usize = 64;

/// One path per unit of demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAssignment {
    /// `paths[i][j]` carries copy `j` of session `i`.
    pub paths: Vec<Vec<Path>>,
    /// `max_e (#paths through e) / c_e`.
    pub congestion: Ratio,
    /// Longest path, in hops.
    pub dilation: usize,
    /// Set when sampling failed and the greedy fallback produced the paths.
    pub fallback: bool,
    pub attempts: usize,
}

impl PathAssignment {
    pub fn from_paths(inst: &UnicastInstance, paths: Vec<Vec<Path>>) -> PathAssignment {
        let congestion = congestion_of(inst, &paths);
        let dilation = paths.iter().flatten().map(|p| p.hops()).max().unwrap_or(0);
        PathAssignment { paths, congestion, dilation, fallback: false, attempts: 0 }
    }
}

pub(crate) fn congestion_of(inst: &UnicastInstance, paths: &[Vec<Path>]) -> Ratio {
    let mut count = vec![0u64; inst.edge_count()];
    for p in paths.iter().flatten() {
        for &e in &p.edges {
            count[e] += 1;
        }
    }
    count
        .iter()
        .zip(&inst.edges)
        .filter(|(c, _)| **c > 0)
        .map(|(&c, e)| ratio::frac(c as i64, e.capacity as i64))
        .max()
        .unwrap_or_else(Ratio::zero)
}

/// Samples `d_i` paths for every session with probability proportional to
/// its flow, accepting once the congestion is at most `4T/z`. After
/// [`ROUNDING_ATTEMPTS`] failures the paths are chosen greedily from the same
/// support, one demand unit at a time, minimising the congestion reached;
/// that result is flagged, and rejected if its congestion exceeds `8T/z`.
pub fn round_paths(inst: &UnicastInstance, sol: &FlowSolution, seed: u64) -> Result<PathAssignment, RouteError> {
    if !sol.z.is_positive() {
        return Err(RouteError::ZeroFlow);
    }
    let k = inst.session_count();
    let mut support: Vec<Vec<(Path, f64)>> = vec![Vec::new(); k];
    for f in &sol.flows {
        if f.value.is_positive() {
            support[f.session].push((f.path.clone(), ratio::to_f64(&f.value)));
        }
    }
    for (i, s) in inst.sessions.iter().enumerate() {
        if s.source == s.sink {
            support[i] = vec![(Path::trivial(s.source), 1.0)];
        }
        if support[i].is_empty() {
            return Err(RouteError::ZeroFlow);
        }
    }
    let t = Ratio::from_integer(sol.hop_bound.into());
    let accept = ratio::int(4) * &t / &sol.z;
    let reject = ratio::int(8) * &t / &sol.z;

    for attempt in 0..ROUNDING_ATTEMPTS {
        let mut rng = seed::rng(seed, "round", attempt as u64);
        let mut paths = Vec::with_capacity(k);
        for (i, s) in inst.sessions.iter().enumerate() {
            let dist = WeightedIndex::new(support[i].iter().map(|(_, w)| *w)).expect("positive weights");
            paths.push((0..s.demand).map(|_| support[i][dist.sample(&mut rng)].0.clone()).collect::<Vec<_>>());
        }
        let mut a = PathAssignment::from_paths(inst, paths);
        if a.congestion <= accept {
            a.attempts = attempt + 1;
            return Ok(a);
        }
    }

    let mut count = vec![0u64; inst.edge_count()];
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); k];
    for (i, s) in inst.sessions.iter().enumerate() {
        for _ in 0..s.demand {
            let mut best: Option<(Ratio, u64, usize)> = None;
            for (c, (p, _)) in support[i].iter().enumerate() {
                let mut peak = Ratio::zero();
                let mut total = 0u64;
                for &e in &p.edges {
                    let load = ratio::frac((count[e] + 1) as i64, inst.edges[e].capacity as i64);
                    if load > peak {
                        peak = load;
                    }
                    total += count[e];
                }
                let better = match &best {
                    None => true,
                    Some((bp, bt, _)) => peak < *bp || (peak == *bp && total < *bt),
                };
                if better {
                    best = Some((peak, total, c));
                }
            }
            let (_, _, c) = best.unwrap();
            let p = support[i][c].0.clone();
            for &e in &p.edges {
                count[e] += 1;
            }
            paths[i].push(p);
        }
    }
    let mut a = PathAssignment::from_paths(inst, paths);
    a.fallback = true;
    a.attempts = ROUNDING_ATTEMPTS;
    if a.congestion > reject {
        return Err(RouteError::Rounding {
            congestion: ratio::format(&a.congestion),
            limit: ratio::format(&reject),
            assignment: Box::new(a),
        });
    }
    Ok(a)
}
