//! Garg–Könemann multiplicative weights for the hop-bounded LP.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{degenerate_solution, hop_bounded_shortest_path, normalize_dual, require_valid, FlowError, FlowSolution, FlowStatus, PathFlow};
use crate::instance::{EdgeId, Path, UnicastInstance};
use crate::ratio::{self, Ratio};

/// Approximate LP solution.
///
/// Edge weights start at `delta / (T c_e)` with
/// `delta = (1+eps) ((1+eps) m)^(-1/eps)`; every phase routes each session's
/// (scaled) demand along current hop-bounded shortest paths in bottleneck
/// steps and multiplies the weights of used edges by `1 + eps * u / (T c_e)`,
/// until `sum_e T c_e y_e >= 1`. Weights are stored divided by `delta`.
///
/// Demands are first scaled so the optimum is at least one, using the flow
/// that sends every session along a fewest-hop path, and doubled whenever a
/// run of phases fails to finish, as in the standard analysis. The primal is
/// made exactly feasible by dividing by its exact maximum congestion, which
/// is never worse than the textbook `log_{1+eps}((1+eps)/delta)` scaling.
/// The dual is the best weight vector seen at a phase boundary, with `h_i`
/// the exact hop-bounded shortest-path length, normalised to
/// `sum_i d_i h_i = 1`.
pub fn solve_mwu(inst: &UnicastInstance, hop_bound: usize, epsilon: f64) -> Result<FlowSolution, FlowError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(FlowError::Epsilon(epsilon));
    }
    require_valid(inst)?;
    if let Some(s) = degenerate_solution(inst, hop_bound, Some(epsilon)) {
        return Ok(s);
    }
    let m = inst.edge_count();
    let nontrivial: Vec<usize> =
        (0..inst.session_count()).filter(|&i| inst.sessions[i].source != inst.sessions[i].sink).collect();
    let cap: Vec<f64> = inst.edges.iter().map(|e| (hop_bound as u64 * e.capacity) as f64).collect();

    let log_inv_delta = ((1.0 + epsilon) * m as f64).ln() / epsilon - (1.0 + epsilon).ln();
    if log_inv_delta > 600.0 {
        return Err(FlowError::EpsilonTooSmall { epsilon, edges: m });
    }
    let stop = log_inv_delta.exp();
    let phase_budget = (2.0 * (log_inv_delta + (1.0 + epsilon).ln()) / (1.0 + epsilon).ln()).ceil() as usize;

    // scale demands so that the optimum of the scaled problem is >= 1
    let unit = vec![1.0f64; m];
    let mut load = vec![0.0f64; m];
    for &i in &nontrivial {
        let s = &inst.sessions[i];
        let (p, _) = hop_bounded_shortest_path(inst, &unit, s.source, s.sink, hop_bound).expect("hop-feasible");
        for &e in &p.edges {
            load[e] += s.demand as f64;
        }
    }
    let z_floor = (0..m).filter(|&e| load[e] > 0.0).map(|e| cap[e] / load[e]).fold(f64::INFINITY, f64::min);
    let mut demand: Vec<f64> = inst.sessions.iter().map(|s| s.demand as f64 * z_floor).collect();

    let mut y: Vec<f64> = cap.iter().map(|c| 1.0 / c).collect();
    let mut d_total: f64 = m as f64;
    let mut flows: Vec<BTreeMap<Vec<EdgeId>, (Path, f64)>> = vec![BTreeMap::new(); inst.session_count()];
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut since_doubling = 0usize;

    let dual_ratio = |y: &[f64]| -> f64 {
        let mut alpha = 0.0;
        for &i in &nontrivial {
            let s = &inst.sessions[i];
            let (_, len) = hop_bounded_shortest_path(inst, y, s.source, s.sink, hop_bound).expect("hop-feasible");
            alpha += s.demand as f64 * len;
        }
        let d: f64 = y.iter().zip(&cap).map(|(a, b)| a * b).sum();
        d / alpha
    };

    'phases: loop {
        for &i in &nontrivial {
            let s = &inst.sessions[i];
            let mut remaining = demand[i];
            while remaining > 0.0 {
                if d_total >= stop {
                    break 'phases;
                }
                let (p, _) = hop_bounded_shortest_path(inst, &y, s.source, s.sink, hop_bound).expect("hop-feasible");
                let bottleneck = p.edges.iter().map(|&e| cap[e]).fold(f64::INFINITY, f64::min);
                let u = remaining.min(bottleneck);
                for &e in &p.edges {
                    let grow = y[e] * epsilon * u / cap[e];
                    y[e] += grow;
                    d_total += grow * cap[e];
                }
                let entry = flows[i].entry(p.edges.clone()).or_insert((p, 0.0));
                entry.1 += u;
                remaining = if u >= remaining { 0.0 } else { remaining - u };
            }
        }
        let r = dual_ratio(&y);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, y.clone()));
        }
        since_doubling += 1;
        if since_doubling >= phase_budget {
            for d in &mut demand {
                *d *= 2.0;
            }
            since_doubling = 0;
        }
        if d_total >= stop {
            break;
        }
    }
    let r = dual_ratio(&y);
    if best.as_ref().is_none_or(|(b, _)| r < *b) {
        best = Some((r, y.clone()));
    }

    // exact primal
    let mut path_flows: Vec<PathFlow> = Vec::new();
    for (i, per) in flows.into_iter().enumerate() {
        for (_, (path, v)) in per {
            if v > 0.0 {
                path_flows.push(PathFlow { session: i, path, value: ratio::from_f64(v) });
            }
        }
    }
    let mut loads = vec![Ratio::zero(); m];
    for f in &path_flows {
        for &e in &f.path.edges {
            loads[e] += &f.value;
        }
    }
    let mut congestion = Ratio::zero();
    for (e, l) in loads.iter().enumerate() {
        let c = l / Ratio::from_integer((hop_bound as u64 * inst.edges[e].capacity).into());
        if c > congestion {
            congestion = c;
        }
    }
    if congestion > Ratio::zero() {
        for f in &mut path_flows {
            f.value = &f.value / &congestion;
        }
    }
    let mut totals = vec![Ratio::zero(); inst.session_count()];
    for f in &path_flows {
        totals[f.session] += &f.value;
    }
    let z = nontrivial
        .iter()
        .map(|&i| &totals[i] / Ratio::from_integer(inst.sessions[i].demand.into()))
        .min()
        .unwrap();
    for (i, s) in inst.sessions.iter().enumerate() {
        if s.source == s.sink {
            path_flows.push(PathFlow { session: i, path: Path::trivial(s.source), value: &z * Ratio::from_integer(s.demand.into()) });
        }
    }
    path_flows.sort_by(|a, b| (a.session, &a.path).cmp(&(b.session, &b.path)));

    let (_, y_best) = best.unwrap();
    let lengths: Vec<Ratio> = y_best.iter().map(|&v| ratio::from_f64(v)).collect();
    let dual = normalize_dual(inst, hop_bound, lengths);
    Ok(FlowSolution { z, hop_bound, epsilon: Some(epsilon), status: FlowStatus::Feasible, flows: path_flows, dual })
}
