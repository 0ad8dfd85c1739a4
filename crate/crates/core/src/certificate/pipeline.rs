//! Dual solutions to moving cuts, and the resulting coding lower bounds.

use super::allpairs::pairwise_to_allpairs;
use super::bucket::bucket;
use super::metric::Metric;
use super::moving_cut::{verify_moving_cut, MovingCut};
use super::CertError;
use crate::flow::{check_dual_feasible, Dual, FlowSolution};
use crate::instance::UnicastInstance;
use crate::ratio::{self, Ratio};
use crate::route::{acceptance_threshold, doubling_sequence, solve_with, RouteConfig, Solver};

/// A verified moving cut with the intermediate objects that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct CutCertificate {
    pub cut: MovingCut,
    /// Sessions chosen by bucketing.
    pub bucket: Vec<usize>,
    pub alpha: Ratio,
    /// Smallest stretched distance between a bucket session's endpoints.
    pub separation: u64,
    pub beta: u64,
}

impl CutCertificate {
    pub fn bound(&self) -> u64 {
        self.cut.distance.unwrap_or(u64::MAX)
    }
}

/// Converts a feasible dual of objective at most 1/10 into a moving cut.
///
/// Bucketing picks sessions `I` with large thresholds; lengths become
/// `1 + floor(l_e * T * d(I))`, which keeps the stretched capacity below
/// `d(I) / 10` while every bucket session stays far apart; the pairwise to
/// all-pairs step then keeps at least `d(I) / 9` demand with all cross
/// distances large, so capacity is below the kept demand.
pub fn dual_to_moving_cut(inst: &UnicastInstance, hop_bound: usize, dual: &Dual, seed: u64) -> Result<CutCertificate, CertError> {
    let check = check_dual_feasible(inst, hop_bound, dual);
    if check.objective > acceptance_threshold() {
        return Err(CertError::DualTooLarge(ratio::format(&check.objective)));
    }
    if !check.feasible {
        return Err(CertError::DualInfeasible(format!("{:?}", check.violation)));
    }
    let nontrivial: Vec<usize> =
        (0..inst.session_count()).filter(|&i| inst.sessions[i].source != inst.sessions[i].sink).collect();
    if nontrivial.is_empty() {
        return Err(CertError::BadSubset);
    }
    let h: Vec<Ratio> = nontrivial.iter().map(|&i| dual.h[i].clone()).collect();
    let d: Vec<u64> = nontrivial.iter().map(|&i| inst.sessions[i].demand).collect();
    let b = bucket(&h, &d)?;
    let chosen: Vec<usize> = b.indices.iter().map(|&x| nontrivial[x]).collect();
    let demand: u64 = chosen.iter().map(|&i| inst.sessions[i].demand).sum();

    let stretch = Ratio::from_integer((hop_bound as u64 * demand).into());
    let lengths: Vec<u64> = dual.lengths.iter().map(|l| 1 + ratio::floor_u64(&(l * &stretch))).collect();

    let mut terminals: Vec<usize> = chosen.iter().flat_map(|&i| [inst.sessions[i].source, inst.sessions[i].sink]).collect();
    terminals.sort_unstable();
    terminals.dedup();
    let n = terminals.len();
    let mut dist = vec![f64::INFINITY; n * n];
    for (a, &x) in terminals.iter().enumerate() {
        let from = inst.weighted_distances_from(&lengths, x)?;
        for (b, &y) in terminals.iter().enumerate() {
            if let Some(v) = from[y] {
                dist[a * n + b] = v as f64;
            }
        }
    }
    let metric = Metric::from_shortest_paths(n, dist);
    let at = |v: usize| terminals.binary_search(&v).unwrap();
    let pairs: Vec<(usize, usize, u64)> = chosen
        .iter()
        .map(|&i| (at(inst.sessions[i].source), at(inst.sessions[i].sink), inst.sessions[i].demand))
        .collect();
    let separation = pairs.iter().map(|&(s, t, _)| metric.d(s, t)).fold(f64::INFINITY, f64::min);
    let separation = if separation.is_finite() { separation as u64 } else { u64::MAX / 4 };
    let all = pairwise_to_allpairs(&metric, &pairs, separation, seed)?;
    let subset: Vec<usize> = all.kept.iter().map(|&x| chosen[x]).collect();
    let cut = MovingCut::new(inst, lengths, subset)?;
    let report = verify_moving_cut(inst, &cut)?;
    if !report.valid {
        return Err(CertError::CutInvalid { capacity: report.capacity, demand: report.demand });
    }
    Ok(CutCertificate { cut, bucket: chosen, alpha: b.alpha, separation, beta: all.beta })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodingBound {
    Certified { bound: u64, certificate: Box<CutCertificate>, solution: Box<FlowSolution> },
    /// The dual at this hop bound is above 1/10, so no cut is derived.
    NoCertificate { z: Ratio, dual_objective: Ratio },
}

/// Solves the LP at `hop_bound` (exactly when the path count allows,
/// otherwise by multiplicative weights) and, when the dual objective is at
/// most 1/10, derives a moving cut.
pub fn coding_lower_bound(inst: &UnicastInstance, hop_bound: usize, seed: u64) -> Result<CodingBound, CertError> {
    let cfg = RouteConfig { max_hop_bound: hop_bound, epsilon: 0.1, seed, solver: Solver::Exact { path_limit: 20_000 } };
    let sol = solve_with(inst, hop_bound, &cfg)?;
    let objective = sol.dual.objective(inst, hop_bound);
    if objective > acceptance_threshold() {
        return Ok(CodingBound::NoCertificate { z: sol.z, dual_objective: objective });
    }
    let certificate = dual_to_moving_cut(inst, hop_bound, &sol.dual, seed)?;
    Ok(CodingBound::Certified { bound: certificate.bound(), certificate: Box::new(certificate), solution: Box::new(sol) })
}

/// Unit lengths on the session whose endpoints are farthest apart: zero
/// capacity, so the hop distance itself is certified.
pub fn distance_cut(inst: &UnicastInstance) -> Option<MovingCut> {
    let mut best: Option<(u64, usize)> = None;
    for (i, s) in inst.sessions.iter().enumerate() {
        if let Some(d) = inst.hop_distances_from(s.source, &[])[s.sink] {
            if best.is_none_or(|(b, _)| d > b) {
                best = Some((d, i));
            }
        }
    }
    let (_, i) = best?;
    MovingCut::new(inst, vec![1; inst.edge_count()], vec![i]).ok()
}

/// Largest certified bound over `T = 1, 2, 4, ...` up to `max_hop_bound`
/// (stopping at the first `T` without a certificate), compared with the
/// plain distance cut.
pub fn best_coding_lower_bound(inst: &UnicastInstance, max_hop_bound: usize, seed: u64) -> Result<(u64, MovingCut), CertError> {
    let mut best = distance_cut(inst).map(|c| (c.distance.unwrap_or(0), c));
    for t in doubling_sequence(max_hop_bound) {
        match coding_lower_bound(inst, t, seed)? {
            CodingBound::Certified { bound, certificate, .. } => {
                if best.as_ref().is_none_or(|(b, _)| bound > *b) {
                    best = Some((bound, certificate.cut));
                }
            }
            CodingBound::NoCertificate { .. } => break,
        }
    }
    best.ok_or(CertError::BadSubset)
}

